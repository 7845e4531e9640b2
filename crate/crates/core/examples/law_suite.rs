//! Runs a law suite and prints the report table.
//!
//! cargo run --release --example law_suite -- [model] [suite] [trials]

use delta_cat::laws::{to_jsonl, to_table};
use delta_cat::{check_suite, LawConfig, Model, Suite};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let model = Model::by_name(args.first().map_or("findiff", String::as_str)).expect("model name");
    let suite: Suite = args.get(1).map_or("cdc", String::as_str).parse().expect("suite name");
    let trials = args.get(2).map_or(200, |t| t.parse().expect("trial count"));

    let cfg = LawConfig::default().with_trials(trials);
    let reports = check_suite(&model, suite, &cfg);
    print!("{}", to_table(&reports));
    println!("\nfirst record as JSON:");
    print!("{}", to_jsonl(&reports[..1]));
}
