use pwidth::chartab::dixon_table;
use pwidth::group::{conjugacy_classes, FiniteGroup, DEFAULT_ENUMERATION_BOUND};
use pwidth::ingest;
use pwidth::report;
use pwidth::width::{p_width, Method, Source, WidthOptions};

fn run(spec: &str, p: u64) -> (String, String) {
    let g = FiniteGroup::from_spec(&spec.parse().unwrap(), DEFAULT_ENUMERATION_BOUND).unwrap();
    let data = conjugacy_classes(&g);
    let t = dixon_table(&g, &data).unwrap();
    let cert = p_width(Source::both(&g, &data, &t), p, &WidthOptions::new(Method::Both)).unwrap();
    (ingest::serialize(&t), report::json(&cert))
}

#[test]
fn tables_and_certificates_ignore_thread_count() {
    for (spec, p) in [("psl:2:8", 3), ("m11", 11), ("psl:3:3", 13)] {
        let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
        let one = pool(1).install(|| run(spec, p));
        let four = pool(4).install(|| run(spec, p));
        assert_eq!(one, four, "{spec}");
    }
}
