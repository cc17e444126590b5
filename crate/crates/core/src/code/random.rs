//! Random stabilizer codes for property checks. Not uniformly distributed.

use rand::Rng;

use super::StabilizerCode;
use crate::bits::BitVec;
use crate::gf2::Gf2Basis;
use crate::pauli::PauliOperator;

/// Draws an `[[n, k]]` code by rejection sampling of commuting, independent
/// generators. Half of the draws restrict each generator to pure X or pure Z
/// type so that CSS codes show up often. Generators get random signs, which
/// are then normalized away together with the derived logical frame.
pub fn random_code<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> StabilizerCode {
    assert!(n >= 1 && k <= n, "random_code needs 1 <= n and k <= n");
    let r = n - k;
    let typed = rng.gen_bool(0.5);
    'restart: loop {
        let mut gens: Vec<PauliOperator> = Vec::with_capacity(r);
        let mut span = Gf2Basis::new(2 * n, 4096);
        let mut tries = 0;
        while gens.len() < r {
            tries += 1;
            if tries > 4000 {
                continue 'restart;
            }
            let mut x = BitVec::from_bools((0..n).map(|_| rng.gen_bool(0.5)));
            let mut z = BitVec::from_bools((0..n).map(|_| rng.gen_bool(0.5)));
            if typed {
                if rng.gen_bool(0.5) {
                    x = BitVec::zeros(n);
                } else {
                    z = BitVec::zeros(n);
                }
            }
            let mut p = PauliOperator::hermitian(x, z);
            if p.is_identity_pattern() || gens.iter().any(|g| !g.commutes_with(&p)) {
                continue;
            }
            if span.contains(&p.symplectic()) {
                continue;
            }
            span.insert(p.symplectic());
            if rng.gen_bool(0.25) {
                p = p.negated();
            }
            gens.push(p);
        }
        let code = StabilizerCode::from_generators(n, gens).expect("sampled generators are valid");
        return code.normalize_signs().expect("independent generators admit sign normalization");
    }
}
