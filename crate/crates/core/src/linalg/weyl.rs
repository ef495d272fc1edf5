use super::operator::DenseOperator;
use super::register::QuditRegister;
use super::state::StateVector;
use super::C64;
use crate::error::{Error, Result};

/// `|B_0> = sum_i |ii> / sqrt(d)` on two qudits.
pub fn bell_state(d: usize) -> Result<StateVector> {
    let register = QuditRegister::new(2, d)?;
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut state = StateVector::zeros(register);
    for i in 0..d {
        state.amplitudes_mut()[i * d + i] = amp;
    }
    Ok(state)
}

/// Heisenberg-Weyl operator `X^a Z^b` with `X|j> = |j+1 mod d>` and
/// `Z|j> = w^j |j>`, `w = exp(2 pi i / d)`.
pub fn weyl_operator(d: usize, a: usize, b: usize) -> Result<DenseOperator> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    for v in [a, b] {
        if v >= d {
            return Err(Error::InvalidIndex { index: v, dim: d });
        }
    }
    let mut op = DenseOperator::zeros(d);
    for j in 0..d {
        // X^a Z^b |j> = w^{bj} |j + a>
        let angle = 2.0 * std::f64::consts::PI * ((b * j) % d) as f64 / d as f64;
        op[((j + a) % d, j)] = C64::from_polar(1.0, angle);
    }
    Ok(op)
}

/// The `d^2` correction unitaries `U_i = X^a Z^b`, indexed `i = a d + b`.
pub fn weyl_set(d: usize) -> Result<Vec<DenseOperator>> {
    let mut set = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            set.push(weyl_operator(d, a, b)?);
        }
    }
    Ok(set)
}

/// Bell basis state `|B_i> = (U_i ⊗ 1)|B_0>`; its amplitude at `|x y>` is
/// `U_i[x, y] / sqrt(d)`.
pub fn bell_basis_state(d: usize, i: usize) -> Result<StateVector> {
    if i >= d * d {
        return Err(Error::InvalidIndex { index: i, dim: d * d });
    }
    let u = weyl_operator(d, i / d, i % d)?;
    let register = QuditRegister::new(2, d)?;
    let inv = 1.0 / (d as f64).sqrt();
    StateVector::from_amplitudes(register, u.as_slice().iter().map(|&z| z * inv).collect())
}

/// Projector `|B_0><B_0|` on two qudits.
pub fn bell_projector(d: usize) -> Result<DenseOperator> {
    Ok(bell_state(d)?.density())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_amplitudes() {
        let b2 = bell_state(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [s, 0.0, 0.0, s];
        for (z, e) in b2.amplitudes().iter().zip(expect) {
            assert!((*z - C64::new(e, 0.0)).norm() < 1e-15);
        }
        assert!((b2.inner(&b2).re - 1.0).abs() < 1e-15);

        let b3 = bell_state(3).unwrap();
        for (k, z) in b3.amplitudes().iter().enumerate() {
            let expect = if k % 4 == 0 { 1.0 / 3f64.sqrt() } else { 0.0 };
            assert_eq!(z.re, expect);
        }
        assert_eq!(bell_state(1), Err(Error::InvalidDimension(1)));
    }

    #[test]
    fn small_weyl_operators() {
        assert_eq!(weyl_operator(2, 0, 0).unwrap(), DenseOperator::identity(2));
        assert_eq!(
            weyl_operator(2, 1, 0).unwrap(),
            DenseOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
        );
        assert!(matches!(
            weyl_operator(3, 3, 0),
            Err(Error::InvalidIndex { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn qutrit_weyl_set_is_trace_orthogonal_and_unitary() {
        let set = weyl_set(3).unwrap();
        for (i, u) in set.iter().enumerate() {
            assert!((&u.dagger() * u).max_abs_diff(&DenseOperator::identity(3)) < 1e-14);
            for (j, v) in set.iter().enumerate() {
                let expect = if i == j { 3.0 } else { 0.0 };
                assert!((u.hs_inner(v) - C64::new(expect, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn bell_basis_is_orthonormal() {
        for d in 2..=4 {
            let basis: Vec<_> = (0..d * d).map(|i| bell_basis_state(d, i).unwrap()).collect();
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((a.inner(b) - C64::new(expect, 0.0)).norm() < 1e-13);
                }
            }
            assert_eq!(basis[0], bell_state(d).unwrap());
        }
    }
}
