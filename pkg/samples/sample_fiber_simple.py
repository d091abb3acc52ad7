#-------------------------------------------------------------------------
# Copyright (c) supportvar contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
#--------------------------------------------------------------------------

import os

import supportvar


number = int(os.environ.get("SUPPORTVAR_GRAPH", "41"))

def fiber_simple():
    entry = supportvar.catalog_graph(number)
    classifier = supportvar.Classifier(samples_per_prime=20)
    for ideal in supportvar.enumerate_fiber(entry.graph):
        report = classifier.classify(ideal)
        print("{} -> {}".format(" ".join(ideal.generators()), report.render()))

if __name__ == "__main__":
    fiber_simple()
