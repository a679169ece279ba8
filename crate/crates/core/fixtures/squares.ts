k: 2
terminal: a
local: d n u
projection: d->a n->a u->a
tile:
# #
# d
tile:
# #
d n
tile:
# #
n #
tile:
# #
n n
tile:
# d
# u
tile:
# u
# #
tile:
# u
# u
tile:
d #
# #
tile:
d n
u d
tile:
n #
d #
tile:
n #
n #
tile:
n n
d n
tile:
n n
n n
tile:
u d
# #
tile:
u d
u u
tile:
u u
# #
tile:
u u
u u
