//! Degree, trace, norm and M(a) against the dense brute-force oracle.

#[path = "support/dense_oracle.rs"]
mod dense_oracle;

use std::collections::HashMap;

use dense_oracle::{check_sample, cyclotomic, oracle, sample, Field};
use mdtk::cyclo::rat;
use mdtk::Rat;
use num_traits::{One, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha,
        ..ProptestConfig::default()
    })]

    #[test]
    fn agrees_with_dense_oracle((n, dense) in sample()) {
        check_sample(n, &dense).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn oracle_knows_small_cases() {
    let f = Field::new(8);
    // √2 = ζ₈ + ζ₈⁷
    let mut dense = vec![Rat::zero(); 8];
    dense[1] = Rat::one();
    dense[7] = Rat::one();
    let o = oracle(&f, &dense);
    assert_eq!((o.degree, o.trace, o.norm), (2, Rat::zero(), rat(-2, 1)));
    assert_eq!(
        cyclotomic(12, &mut HashMap::new()),
        [1, 0, -1, 0, 1].map(|c| rat(c, 1)).to_vec()
    );
}
