//! Seeded random instance corpora for the property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core::problem::Request;
use crate::core::rational::Rat;

/// A reproducible stream of random request sequences.
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Corpus {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// 1..=max_len jobs with sizes i/denom, i in 1..=max_numer.
    pub fn jobs(&mut self, max_len: usize, max_numer: i64, denom: i64) -> Vec<Request> {
        let len = self.rng.gen_range(1..=max_len);
        (0..len)
            .map(|_| Request::Job(Rat::new(self.rng.gen_range(1..=max_numer), denom).unwrap()))
            .collect()
    }

    /// 1..=max_len items with sizes i/denom, i in 1..=denom (so in (0, 1]).
    pub fn items(&mut self, max_len: usize, denom: i64) -> Vec<Request> {
        let len = self.rng.gen_range(1..=max_len);
        (0..len)
            .map(|_| Request::Item(Rat::new(self.rng.gen_range(1..=denom), denom).unwrap()))
            .collect()
    }

    /// 1..=max_len edges on vertices 0..vertices with weights i/4, i in 0..=4.
    pub fn edges(&mut self, max_len: usize, vertices: u32) -> Vec<Request> {
        let len = self.rng.gen_range(1..=max_len);
        let mut seq = Vec::with_capacity(len);
        while seq.len() < len {
            let u = self.rng.gen_range(0..vertices);
            let v = self.rng.gen_range(0..vertices);
            if u == v {
                continue;
            }
            let numer = self.rng.gen_range(0..=4i64);
            seq.push(Request::Edge(u, v, Rat::new(numer, 4).unwrap()));
        }
        seq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_reproducible() {
        let mut a = Corpus::new(3);
        let mut b = Corpus::new(3);
        for _ in 0..10 {
            assert_eq!(a.jobs(8, 4, 4), b.jobs(8, 4, 4));
            assert_eq!(a.items(7, 8), b.items(7, 8));
            assert_eq!(a.edges(8, 8), b.edges(8, 8));
        }
    }

    #[test]
    fn sizes_stay_on_the_grid() {
        let mut corpus = Corpus::new(11);
        for _ in 0..50 {
            for request in corpus.items(7, 8) {
                if let Request::Item(size) = request {
                    assert!(size.is_positive() && size <= Rat::one());
                }
            }
        }
    }
}
