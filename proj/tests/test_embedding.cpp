int cadi_placeholder_test_embedding = 0;
