from hypothesis import given, strategies as st

from fqcert.intlin import column_echelon, dot, solve

matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=1, max_size=4)
)


def _det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1 :] for row in M[1:]]) for j in range(len(M)))


@given(matrices)
def test_echelon_is_a_unimodular_transform(A):
    n = len(A[0])
    ech = column_echelon(A)
    assert abs(_det(ech.U)) == 1
    for r, row in enumerate(A):
        for j in range(n):
            assert sum(row[i] * ech.U[i][j] for i in range(n)) == ech.H[r][j]
    for r, c in ech.pivots:
        assert ech.H[r][c] > 0
        assert all(ech.H[r][j] == 0 for j in range(c + 1, n))


@given(matrices, st.data())
def test_solve_solutions_and_kernel(A, data):
    n = len(A[0])
    x0 = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    b = [dot(row, x0) for row in A]
    sol = solve(A, b)
    assert sol is not None  # b was built from an integer point
    x, kernel = sol
    assert [dot(row, x) for row in A] == b
    for k in kernel:
        assert all(dot(row, k) == 0 for row in A)


def test_solve_detects_no_integer_solution():
    assert solve([[2, 4]], [1]) is None
    assert solve([[1, 1], [1, -1]], [1, 0]) is None
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
