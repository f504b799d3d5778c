int cadi_placeholder_test_cadi_metric = 0;
