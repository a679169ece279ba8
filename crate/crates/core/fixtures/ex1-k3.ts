k: 3
terminal: a
local: n →
projection: n->a →->a
tile:
# # #
# → n
# n →
tile:
# # #
n n n
n n n
tile:
# # #
n n n
n n →
tile:
# # #
n n n
→ n n
tile:
# # #
n n →
n → n
tile:
# # #
n → #
→ n #
tile:
# # #
→ n n
n → n
tile:
# n n
# n n
# # #
tile:
# n n
# n n
# n n
tile:
# n →
# n n
# # #
tile:
# n →
# n n
# n n
tile:
# → n
# n →
# n n
tile:
n n #
n n #
# # #
tile:
n n #
n n #
n n #
tile:
n n n
n n n
# # #
tile:
n n n
n n n
n n n
tile:
n n n
n n n
n n →
tile:
n n n
n n n
→ n n
tile:
n n n
n n →
n → n
tile:
n n n
n n →
→ → n
tile:
n n n
→ n n
n → n
tile:
n n n
→ n n
n → →
tile:
n n →
n n n
# # #
tile:
n n →
n n n
n n n
tile:
n n →
n → n
→ n n
tile:
n n →
→ → n
# # #
tile:
n → #
→ n #
n n #
tile:
n → n
n n →
# # #
tile:
n → n
n n →
n n n
tile:
n → n
→ n n
# # #
tile:
n → n
→ n n
n n n
tile:
→ n #
n n #
# # #
tile:
→ n #
n n #
n n #
tile:
→ n n
n n n
# # #
tile:
→ n n
n n n
n n n
tile:
→ n n
n → n
n n →
tile:
→ n n
n → →
# # #
