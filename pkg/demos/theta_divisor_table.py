"""Closed-form Gauss degrees of theta divisors and a Groebner check of D(4)."""

from conormal import schottky_table
from conormal.schottky import determinantal_oracle, rank3_quadric_degree

for row in schottky_table(6):
    print(row.as_dict())

print("D(4) from the formula:", rank3_quadric_degree(4))
print("D(4) from the minors ideal:", determinantal_oracle(4, 3))
