use polyprod::corpus;
use polyprod::groups::TcClass;

fn main() {
    println!(
        "{:<14} {:>5} {:>3} {:>6} {:>8} {:>10} {:>6} {:>6}",
        "name", "order", "ab", "|Z|", "nilp", "series", "tc", "simple"
    );
    for (name, g) in corpus::full_corpus() {
        let series = g.descending_central_series().stage_orders();
        let tc = match g.tc_class() {
            TcClass::Class(c) => c.to_string(),
            TcClass::Unbounded => "∞".into(),
        };
        println!(
            "{:<14} {:>5} {:>3} {:>6} {:>8} {:>10} {:>6} {:>6}",
            name,
            g.order(),
            if g.is_abelian() { "y" } else { "n" },
            g.center().order(),
            g.nilpotency_class()
                .map(|c| c.to_string())
                .unwrap_or("-".into()),
            format!("{series:?}"),
            tc,
            if g.is_simple() { "y" } else { "n" }
        );
    }
}
