//! Benchmark fixtures shared by the criterion targets.

use xop::ratpoly::rat;
use xop::XmParams;

/// Parameter triples used across benchmarks.
pub fn xm_samples() -> Vec<XmParams> {
    vec![
        XmParams::new(rat(5, 4), rat(1, 2), 2),
        XmParams::new(rat(1, 3), rat(-1, 2), 2),
        XmParams::new(rat(17, 4), rat(3, 4), 3),
    ]
}
