"""Infinite projections on l^2: a proper subprojection equivalent to the whole."""
from projgeom import lattice as lt

# rows p_n = {x : v2(x) = n} are infinite and sum to 1
rows = [lt.valuation_row(n) for n in range(4)]
for n, row in enumerate(rows):
    print(f'p_{n}:', row.support(8))

# grouping them by n mod 3 gives e_0, e_1, e_2; take p = e_0, q = e_0 + e_1
p, q, report = lt.dedekind_pair()
print('p =', p)
print('q =', q)
print(report)

# in M_n this cannot happen: p <= q with equal rank forces p = q
finite_p = lt.ValuationProjection(extra={1, 2})
finite_q = lt.ValuationProjection(extra={1, 2, 3})
print('finite: leq', lt.leq(finite_p, finite_q),
      'equivalent', lt.mv_equiv(finite_p, finite_q))

# an increasing family of pairwise equivalent projections
for k, pk in enumerate(lt.ball_disjoint_family(4), start=1):
    print(f'p_{k} = {pk}  card {lt.card(pk)}')
