k: 2
terminal: a b
local: a1 a2 b
projection: a1->a a2->a b->b
tile:
# #
# a1
tile:
# #
a1 a2
tile:
# #
a2 b
tile:
# #
b #
tile:
# #
b a1
tile:
# a1
# #
tile:
a1 a2
# #
tile:
a2 b
# #
tile:
b #
# #
tile:
b a1
# #
