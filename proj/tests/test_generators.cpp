int cadi_placeholder_test_generators = 0;
