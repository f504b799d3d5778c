int cadi_placeholder_test_geometry = 0;
