int cadi_placeholder_test_dataset = 0;
