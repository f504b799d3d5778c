int cadi_placeholder_test_cli = 0;
