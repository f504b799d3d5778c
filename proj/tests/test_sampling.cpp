int cadi_placeholder_test_sampling = 0;
