//! Table constructors for the concrete groups the engine works with.

use super::{GroupError, GroupTable};

/// Z_n with `i * j = (i + j) mod n`.
pub fn cyclic_group(n: u64) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::EmptyGroup);
    }
    let n = n as usize;
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = ((i + j) % n) as u32;
        }
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    GroupTable::new(n, table, gens, Some(format!("Z{n}")))
}

/// Direct sum of cyclic groups of the given moduli, elements in mixed radix.
pub fn abelian_group(moduli: &[u64]) -> Result<GroupTable, GroupError> {
    let mut g = cyclic_group(1)?;
    for &m in moduli {
        g = direct_product(&g, &cyclic_group(m)?);
    }
    let label = moduli
        .iter()
        .map(|m| format!("Z{m}"))
        .collect::<Vec<_>>()
        .join(" x ");
    g.set_name(if label.is_empty() { "1".into() } else { label });
    Ok(g)
}

/// Componentwise product on pairs `(a, b) -> a * |B| + b`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for xa in 0..na {
        for xb in 0..nb {
            let x = xa * nb + xb;
            for ya in 0..na {
                for yb in 0..nb {
                    let y = ya * nb + yb;
                    table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
                }
            }
        }
    }
    let mut gens: Vec<u32> = a.generators().iter().map(|&g| g * nb as u32).collect();
    gens.extend(b.generators().iter().map(|&g| g));
    GroupTable::new(n, table, gens, None).expect("product of groups is a group")
}

/// Semidirect product `N : H` for an action given as one automorphism table
/// per element of `H`; `action[h][x]` is the image of `x` under `h`.
/// Multiplication: `(n1, h1)(n2, h2) = (n1 * action(h1)(n2), h1 h2)`.
pub fn semidirect_product(
    n: &GroupTable,
    h: &GroupTable,
    action: &[Vec<u32>],
) -> Result<GroupTable, GroupError> {
    let (nn, nh) = (n.order(), h.order());
    if action.len() != nh {
        return Err(GroupError::InvalidAction(format!(
            "need one automorphism per H-element, got {} for |H| = {nh}",
            action.len()
        )));
    }
    for (hx, auto) in action.iter().enumerate() {
        if auto.len() != nn {
            return Err(GroupError::InvalidAction(format!(
                "automorphism for h = {hx} maps {} elements, |N| = {nn}",
                auto.len()
            )));
        }
        if auto[0] != 0 {
            return Err(GroupError::InvalidAction(format!(
                "image of identity under h = {hx} is {}",
                auto[0]
            )));
        }
        let mut seen = vec![false; nn];
        for &y in auto {
            if y as usize >= nn || std::mem::replace(&mut seen[y as usize], true) {
                return Err(GroupError::InvalidAction(format!(
                    "action of h = {hx} is not a bijection"
                )));
            }
        }
        for x in 0..nn {
            for y in 0..nn {
                if auto[n.mul(x, y)] as usize
                    != n.mul(auto[x] as usize, auto[y] as usize)
                {
                    return Err(GroupError::InvalidAction(format!(
                        "action of h = {hx} is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
    }
    // action(h1 h2) = action(h1) . action(h2)
    for h1 in 0..nh {
        for h2 in 0..nh {
            let lhs = &action[h.mul(h1, h2)];
            for x in 0..nn {
                if lhs[x] != action[h1][action[h2][x] as usize] {
                    return Err(GroupError::InvalidAction(format!(
                        "action is not a homomorphism H -> Aut(N) at ({h1}, {h2})"
                    )));
                }
            }
        }
    }
    let order = nn * nh;
    let mut table = vec![0u32; order * order];
    for n1 in 0..nn {
        for h1 in 0..nh {
            let x = n1 * nh + h1;
            for n2 in 0..nn {
                for h2 in 0..nh {
                    let y = n2 * nh + h2;
                    let first = n.mul(n1, action[h1][n2] as usize);
                    table[x * order + y] = (first * nh + h.mul(h1, h2)) as u32;
                }
            }
        }
    }
    let mut gens: Vec<u32> = n.generators().iter().map(|&g| g * nh as u32).collect();
    gens.extend(h.generators().iter().map(|&g| g));
    GroupTable::new(order, table, gens, None)
}

/// Dihedral group of order `2n` (`n >= 1`): Z_n with an inverting involution.
pub fn dihedral_group(n: u64) -> Result<GroupTable, GroupError> {
    let rot = cyclic_group(n)?;
    let flip = cyclic_group(2)?;
    let nn = n as usize;
    let ident: Vec<u32> = (0..nn as u32).collect();
    let invert: Vec<u32> = (0..nn).map(|x| ((nn - x) % nn) as u32).collect();
    let mut g = semidirect_product(&rot, &flip, &[ident, invert])?;
    g.set_name(format!("D{}", 2 * n));
    Ok(g)
}

/// Z_m : Z_n with the generator of Z_n acting by `a -> a^r`.
/// Requires `r^n = 1 (mod m)`.
pub fn metacyclic_group(m: u64, n: u64, r: i64) -> Result<GroupTable, GroupError> {
    let mm = m as i64;
    let r = r.rem_euclid(mm) as u64;
    if pow_mod(r, n, m) != 1 % m {
        return Err(GroupError::InvalidAction(format!(
            "r^n = {r}^{n} is not 1 mod {m}"
        )));
    }
    let base = cyclic_group(m)?;
    let top = cyclic_group(n)?;
    let action: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let rj = pow_mod(r, j, m);
            (0..m).map(|x| ((x * rj) % m) as u32).collect()
        })
        .collect();
    let mut g = semidirect_product(&base, &top, &action)?;
    g.set_name(format!("Z{m}:Z{n}(r={r})"));
    Ok(g)
}

/// Semidirect product of an abelian group (given by moduli) by Z_n, the
/// cyclic generator acting through an integer matrix: generator `j` of the
/// abelian part maps to `sum_i matrix[j][i] * e_i`.
pub fn abelian_by_cyclic(
    moduli: &[u64],
    n: u64,
    matrix: &[Vec<i64>],
) -> Result<GroupTable, GroupError> {
    let base = abelian_group(moduli)?;
    let k = moduli.len();
    if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
        return Err(GroupError::InvalidAction(format!(
            "action matrix must be {k} x {k}"
        )));
    }
    // Image of a mixed-radix element under one application of the matrix.
    let apply = |x: usize| -> usize {
        let mut digits = vec![0u64; k];
        let mut rest = x;
        for i in (0..k).rev() {
            digits[i] = (rest % moduli[i] as usize) as u64;
            rest /= moduli[i] as usize;
        }
        let mut out = vec![0i64; k];
        for j in 0..k {
            for i in 0..k {
                out[i] += matrix[j][i] * digits[j] as i64;
            }
        }
        let mut idx = 0usize;
        for i in 0..k {
            let m = moduli[i] as i64;
            idx = idx * moduli[i] as usize + out[i].rem_euclid(m) as usize;
        }
        idx
    };
    let size = base.order();
    let one_step: Vec<u32> = (0..size).map(|x| apply(x) as u32).collect();
    let mut action = vec![(0..size as u32).collect::<Vec<u32>>()];
    for j in 1..n as usize {
        let prev = &action[j - 1];
        action.push((0..size).map(|x| one_step[prev[x] as usize]).collect());
    }
    // The matrix must have multiplicative order dividing n.
    let back_to_id = (0..size).all(|x| one_step[action[n as usize - 1][x] as usize] == x as u32);
    if n > 1 && !back_to_id {
        return Err(GroupError::InvalidAction(format!(
            "matrix order does not divide {n}"
        )));
    }
    semidirect_product(&base, &cyclic_group(n)?, &action)
}

/// The quaternion group of order 8: elements `+-1, +-i, +-j, +-k` encoded as
/// `sign * 4 + axis` with axes `1, i, j, k`.
pub fn quaternion_group() -> GroupTable {
    // axis multiplication: (axis, axis) -> (sign flip, axis)
    const AXIS: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let n = 8;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (sx, ax) = (x / 4 == 1, x % 4);
            let (sy, ay) = (y / 4 == 1, y % 4);
            let (flip, az) = AXIS[ax][ay];
            let sz = sx ^ sy ^ flip;
            table[x * n + y] = ((sz as usize) * 4 + az) as u32;
        }
    }
    let mut g = GroupTable::new(n, table, vec![1, 2], None).expect("quaternion table");
    g.set_name("Q8");
    g
}

/// The alternating group A4 as V4 : Z3, the 3-cycle rotating the three
/// involutions.
pub fn alternating_four() -> GroupTable {
    let v4 = abelian_group(&[2, 2]).expect("V4");
    // V4 elements in mixed radix: 0 = (0,0), 1 = (0,1), 2 = (1,0), 3 = (1,1).
    // Rotation (0,1) -> (1,0) -> (1,1) -> (0,1).
    let rot: Vec<u32> = vec![0, 2, 3, 1];
    let rot2: Vec<u32> = (0..4).map(|x| rot[rot[x] as usize]).collect();
    let ident: Vec<u32> = (0..4).collect();
    let mut g = semidirect_product(&v4, &cyclic_group(3).expect("Z3"), &[ident, rot, rot2])
        .expect("A4 action");
    g.set_name("A4");
    g
}

/// Generalized dihedral group of an abelian group: the involution inverts.
pub fn generalized_dihedral(moduli: &[u64]) -> Result<GroupTable, GroupError> {
    let base = abelian_group(moduli)?;
    let size = base.order();
    let ident: Vec<u32> = (0..size as u32).collect();
    let invert: Vec<u32> = (0..size).map(|x| base.inv(x) as u32).collect();
    let mut g = semidirect_product(&base, &cyclic_group(2)?, &[ident, invert])?;
    g.set_name(format!("Dih({})", base.name().unwrap_or("A")));
    Ok(g)
}

/// Extraspecial group of order `p^3` and exponent `p` (p odd): the Heisenberg
/// group, triples `(x, y, z)` with
/// `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')`.
pub fn extraspecial_exponent_p(p: u64) -> Result<GroupTable, GroupError> {
    if !crate::abelian::is_prime(p) || p == 2 {
        return Err(GroupError::NotPrime(p));
    }
    let pp = p as usize;
    let n = pp * pp * pp;
    let enc = |x: usize, y: usize, z: usize| (x * pp + y) * pp + z;
    let mut table = vec![0u32; n * n];
    for x in 0..pp {
        for y in 0..pp {
            for z in 0..pp {
                let a = enc(x, y, z);
                for x2 in 0..pp {
                    for y2 in 0..pp {
                        for z2 in 0..pp {
                            let b = enc(x2, y2, z2);
                            let c = enc((x + x2) % pp, (y + y2) % pp, (z + z2 + x * y2) % pp);
                            table[a * n + b] = c as u32;
                        }
                    }
                }
            }
        }
    }
    // (1, 0, 0) and (0, 1, 0) generate.
    let gens = vec![enc(1, 0, 0) as u32, enc(0, 1, 0) as u32];
    let mut g = GroupTable::new(n, table, gens, None)?;
    g.set_name(format!("ES({p}^3, exp {p})"));
    Ok(g)
}

/// Extraspecial group of order `p^3` and exponent `p^2` (p odd):
/// `Z_{p^2} : Z_p` with the action `a -> a^{1+p}`.
pub fn extraspecial_exponent_p2(p: u64) -> Result<GroupTable, GroupError> {
    if !crate::abelian::is_prime(p) || p == 2 {
        return Err(GroupError::NotPrime(p));
    }
    let mut g = metacyclic_group(p * p, p, (1 + p) as i64)?;
    g.set_name(format!("ES({p}^3, exp {p}^2)"));
    Ok(g)
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    base %= modulus;
    let mut acc = 1 % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_actions_rejected() {
        let z5 = cyclic_group(5).unwrap();
        let z2 = cyclic_group(2).unwrap();
        // Doubling has order 4 mod 5, not 2.
        let double: Vec<u32> = (0..5).map(|x| (x * 2 % 5) as u32).collect();
        let ident: Vec<u32> = (0..5).collect();
        assert!(matches!(
            semidirect_product(&z5, &z2, &[ident.clone(), double]),
            Err(GroupError::InvalidAction(_))
        ));
        // Non-bijective map.
        let squash = vec![0u32; 5];
        assert!(semidirect_product(&z5, &z2, &[ident, squash]).is_err());
    }

    #[test]
    fn metacyclic_validation() {
        // 2^4 = 16 = 1 mod 5: valid (F20).
        assert!(metacyclic_group(5, 4, 2).is_ok());
        // 2^3 = 8 = 1 mod 7: valid (Z7 : Z3).
        assert!(metacyclic_group(7, 3, 2).is_ok());
        // 2^2 = 4 != 1 mod 5: invalid.
        assert!(metacyclic_group(5, 2, 2).is_err());
        // r = -1 works through the euclidean lift.
        let g = metacyclic_group(7, 4, -1).unwrap();
        assert_eq!(g.order(), 28);
        let (ab, _, _) = g.abelianization();
        assert_eq!(ab.invariant_factors(), &[4]);
    }

    #[test]
    fn frobenius_f20() {
        let f20 = metacyclic_group(5, 4, 2).unwrap();
        assert_eq!(f20.order(), 20);
        assert_eq!(f20.center().order(), 1);
        assert_eq!(f20.derived_subgroup().order(), 5);
    }

    #[test]
    fn quaternion_structure() {
        let q8 = quaternion_group();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.exponent(), 4);
        // Exactly one involution.
        let involutions = (0..8).filter(|&x| q8.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(q8.derived_subgroup().order(), 2);
    }

    #[test]
    fn a4_structure() {
        let a4 = alternating_four();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.derived_subgroup().order(), 4);
        let (ab, _, _) = a4.abelianization();
        assert_eq!(ab.invariant_factors(), &[3]);
    }

    #[test]
    fn extraspecials() {
        let h = extraspecial_exponent_p(3).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        assert_eq!(h.center().order(), 3);
        assert_eq!(h.derived_subgroup().order(), 3);
        let h = extraspecial_exponent_p2(3).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 9);
        assert_eq!(h.center().order(), 3);
        assert_eq!(h.derived_subgroup().order(), 3);
        assert!(extraspecial_exponent_p(2).is_err());
        assert!(extraspecial_exponent_p(4).is_err());
    }

    #[test]
    fn generalized_dihedral_3_3() {
        let g = generalized_dihedral(&[3, 3]).unwrap();
        assert_eq!(g.order(), 18);
        assert_eq!(g.derived_subgroup().order(), 9);
        let (ab, _, _) = g.abelianization();
        assert_eq!(ab.invariant_factors(), &[2]);
    }

    #[test]
    fn order84_composite() {
        // (V4 x Z7) : Z3: rotate V4 as in A4, push Z7 through squaring.
        let g = abelian_by_cyclic(
            &[2, 2, 7],
            3,
            &[vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 2]],
        )
        .unwrap();
        assert_eq!(g.order(), 84);
        assert_eq!(g.derived_subgroup().order(), 28);
        let (ab, _, _) = g.abelianization();
        assert_eq!(ab.invariant_factors(), &[3]);
    }
}
