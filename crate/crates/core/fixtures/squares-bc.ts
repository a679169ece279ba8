k: 2
terminal: b c
local: db dc nb nc ub uc
projection: db->b dc->c nb->b nc->c ub->b uc->c
tile:
# #
# db
tile:
# #
# dc
tile:
# #
db nb
tile:
# #
dc nc
tile:
# #
nb #
tile:
# #
nb nb
tile:
# #
nc #
tile:
# #
nc nc
tile:
# db
# ub
tile:
# dc
# uc
tile:
# ub
# #
tile:
# ub
# ub
tile:
# uc
# #
tile:
# uc
# uc
tile:
db #
# #
tile:
db nb
ub db
tile:
dc #
# #
tile:
dc nc
uc dc
tile:
nb #
db #
tile:
nb #
nb #
tile:
nb nb
db nb
tile:
nb nb
nb nb
tile:
nc #
dc #
tile:
nc #
nc #
tile:
nc nc
dc nc
tile:
nc nc
nc nc
tile:
ub db
# #
tile:
ub db
ub ub
tile:
ub ub
# #
tile:
ub ub
ub ub
tile:
uc dc
# #
tile:
uc dc
uc uc
tile:
uc uc
# #
tile:
uc uc
uc uc
