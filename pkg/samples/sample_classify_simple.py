#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import logging
import os

import supportvar


generators = os.environ.get("SUPPORTVAR_GENERATORS", "a^2,a*b,b*c,c*d,d^2").split(",")

def classify_simple():
    report = supportvar.classify_monomials(generators, samples_per_prime=50)
    print("{}: {}".format(report.verdict.value, report.render()))
    for certificate in report.certificates:
        print("  {}".format(certificate))

if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    classify_simple()
