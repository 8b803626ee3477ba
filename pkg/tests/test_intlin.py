from gkmkalc import intlin


def test_kernel_and_saturation():
    k = intlin.integer_kernel([[1, 2, 3]], 3)
    assert len(k) == 2 and intlin.is_saturated(k, 3)
    assert not intlin.is_saturated([[2, 0]], 2)
    assert intlin.snf_diagonal([[2, 4], [6, 8]], 2) == [2, 4]


def test_unimodular_completion():
    for v in [(3, 5), (1, 0, 0), (2, 3, 7), (-4, 9)]:
        U = intlin.unimodular_completion(v)
        assert abs(intlin.det(U)) == 1
        assert intlin.matvec(U, v)[0] == 1 and not any(intlin.matvec(U, v)[1:])
        assert intlin.matmul(U, intlin.inverse_unimodular(U)) == intlin.identity(len(v))


def test_sparse_echelon_rank():
    e = intlin.SparseZEchelon()
    rows = [{0: 2, 1: 1}, {1: 3}, {0: 4, 1: 5}, {0: 1}]
    for r in rows:
        e.add(r)
    assert len(e) == intlin.rank([[2, 1], [0, 3], [4, 5], [1, 0]], 2) == 2


def test_row_span():
    assert intlin.in_row_span_Z([[2, 0], [0, 3]], [4, 3])
    assert not intlin.in_row_span_Z([[2, 0], [0, 3]], [1, 0])
