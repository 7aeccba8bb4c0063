# the examples/ corpus is reference material, not part of the suite
collect_ignore = ["examples"]
