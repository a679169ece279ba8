k: 2
terminal: a
local: n ↗ ↘
projection: n->a ↗->a ↘->a
tile:
# #
# ↘
tile:
# #
n n
tile:
# #
n ↗
tile:
# #
↗ #
tile:
# #
↘ n
tile:
# n
# #
tile:
# n
# n
tile:
# ↘
# n
tile:
n #
# #
tile:
n #
n #
tile:
n n
# #
tile:
n n
n n
tile:
n n
n ↗
tile:
n n
↘ n
tile:
n n
↘ ↗
tile:
n ↗
↗ n
tile:
n ↘
# #
tile:
n ↘
n n
tile:
↗ #
n #
tile:
↗ n
# #
tile:
↗ n
n n
tile:
↘ n
n ↘
tile:
↘ ↗
# #
