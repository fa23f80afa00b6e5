// Every example under examples/ runs to completion.

macro_rules! example {
    ($test:ident, $file:literal) => {
        #[test]
        fn $test() {
            #[allow(dead_code)]
            mod ex {
                include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
            }
            ex::run_example().expect($file);
        }
    };
}

example!(group_geometry, "group_geometry.rs");
example!(dsh_operators, "dsh_operators.rs");
example!(singular_quadrature, "singular_quadrature.rs");
example!(resolvent, "resolvent.rs");
example!(spectral_kernels, "spectral_kernels.rs");
example!(transfer_oracle, "transfer_oracle.rs");
example!(elementary_bounds, "elementary_bounds.rs");
example!(multiplier_family, "multiplier_family.rs");
example!(wave_estimates, "wave_estimates.rs");
example!(sweep_config, "sweep_config.rs");
