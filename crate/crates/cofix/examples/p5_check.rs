use cofix::arith::Prime;
use cofix::transfer_ideal::{verify_main_theorem, verify_fp_transfer_image};
fn main() {
    for (p, n) in [(5u64, 5usize), (5, 6), (5, 7)] {
        let t = std::time::Instant::now();
        let r = verify_main_theorem(Prime::new(p).unwrap(), n).unwrap();
        println!("main p={p} n={n}: verified={} in {:?} (special partitions: {})", r.verified, t.elapsed(), r.special_partition_count);
        let t = std::time::Instant::now();
        let r = verify_fp_transfer_image(Prime::new(p).unwrap(), n).unwrap();
        println!("fp-image p={p} n={n}: verified={} in {:?}", r.verified, t.elapsed());
    }
}
