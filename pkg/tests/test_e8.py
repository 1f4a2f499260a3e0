from siegel2.e8 import _doubled_vectors_by_norm, e8_pair_counts


def test_vector_counts_match_theta_series():
    by_norm = _doubled_vectors_by_norm(2)
    assert len(by_norm[0]) == 1
    assert len(by_norm[1]) == 240
    assert len(by_norm[2]) == 2160


def test_root_pair_counts():
    counts = e8_pair_counts(1, 1)
    assert counts[(0, 0, 0)] == 1
    assert counts[(0, 0, 1)] == 240
    assert counts[(1, 0, 1)] == 30240
    assert counts[(1, 1, 1)] == 13440
    assert counts[(1, 2, 1)] == 240
    # inner products of roots are bounded by 2
    assert (1, 3, 1) not in counts
    # total pairs split by inner product
    assert sum(counts[(1, r, 1)] for r in range(-2, 3)) == 240 * 240
