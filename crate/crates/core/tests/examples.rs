macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run().expect(concat!($file, " should run"));
        }
    };
}

example!(parse_formula, "parse_formula.rs");
example!(tseitin_dimacs, "tseitin_dimacs.rs");
example!(solve_sat, "solve_sat.rs");
example!(roundtrip_offline, "roundtrip_offline.rs");
example!(acceptance_gate, "acceptance_gate.rs");
example!(offline_pipeline, "offline_pipeline.rs");
example!(statistics, "statistics.rs");
example!(replay_dimacs, "replay_dimacs.rs");
example!(llm_client, "llm_client.rs");
