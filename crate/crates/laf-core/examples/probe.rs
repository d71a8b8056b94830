//! Ad-hoc probe: run the kernel on one random instance and dump the verdict.

use laf_core::bench::gen_random_positive_3cnf;
use laf_core::laf::{kernel_check, KernelOptions};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(50);
    let m: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(46);
    let seed: u64 = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(1);
    let f = gen_random_positive_3cnf(n, m, seed).unwrap();
    let t0 = std::time::Instant::now();
    let v = kernel_check(&f, &KernelOptions::default()).unwrap();
    println!("{}", serde_json::to_string_pretty(&v.to_json()).unwrap());
    println!("total: {:?}", t0.elapsed());
}
