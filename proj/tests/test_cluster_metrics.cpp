int cadi_placeholder_test_cluster_metrics = 0;
