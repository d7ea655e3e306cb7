macro_rules! example_test {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(orders_by_genus, "orders_by_genus.rs");
example_test!(check_order, "check_order.rs");
example_test!(solvability, "solvability.rs");
example_test!(order_bound, "order_bound.rs");
example_test!(totient_bound, "totient_bound.rs");
example_test!(bender_presentation, "bender_presentation.rs");
example_test!(word_orders, "word_orders.rs");
example_test!(matrix_order, "matrix_order.rs");
