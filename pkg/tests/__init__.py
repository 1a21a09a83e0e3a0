# Tests package for itcluster
