macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(parse_potential, "parse_potential.rs");
example!(constant_determinant, "constant_determinant.rs");
example!(kac_limit, "kac_limit.rs");
example!(shifted_grid, "shifted_grid.rs");
example!(jump_clusters, "jump_clusters.rs");
example!(error_law_fit, "error_law_fit.rs");
example!(kms_trace, "kms_trace.rs");
example!(euler_maclaurin, "euler_maclaurin.rs");
example!(series_constant, "series_constant.rs");
example!(scenario_sweep, "scenario_sweep.rs");
