from hadamard_dims.randomness import derive_seed, field_vector, label, stream


def test_streams_reproducible_and_independent():
    a = field_vector(stream(5, 1, 2), 2**61 - 1, 8)
    assert a == field_vector(stream(5, 1, 2), 2**61 - 1, 8)
    assert a != field_vector(stream(5, 1, 3), 2**61 - 1, 8)
    assert a != field_vector(stream(6, 1, 2), 2**61 - 1, 8)


def test_labels_and_child_seeds_stable():
    assert label("twist") == label("twist") != label("hedge")
    assert derive_seed(3, 7) == derive_seed(3, 7)
    assert 0 <= derive_seed(3, 7) < 2**62
