//! Isomorphism testing for small groups by backtracking over generator images.

use super::{FiniteGroup, GroupHom};

fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

fn class_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    v.sort_unstable();
    v
}

/// Extend a partial generator assignment to the subgroup it generates;
/// None on conflict.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// An isomorphism G → H if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    if g.order() != h.order() || order_profile(g) != order_profile(h) || class_profile(g) != class_profile(h)
    {
        return None;
    }
    let gens = g.small_generating_set();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.order()).filter(|&t| h.element_order(t) == o).collect()
        })
        .collect();
    let mut imgs = Vec::new();
    fn search(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        cands: &[Vec<usize>],
        imgs: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let j = imgs.len();
        if j == gens.len() {
            let map = extend(g, h, gens, imgs)?;
            return map.iter().all(|&x| x != usize::MAX).then_some(map);
        }
        for &t in &cands[j] {
            imgs.push(t);
            if extend(g, h, &gens[..=j], imgs).is_some() {
                if let Some(m) = search(g, h, gens, cands, imgs) {
                    return Some(m);
                }
            }
            imgs.pop();
        }
        None
    }
    let map = search(g, h, &gens, &cands, &mut imgs)?;
    Some(GroupHom::new(g.order(), h.order(), map))
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn distinguishes_groups_of_order_eight() {
        let q8 = catalog::quaternion();
        let d8 = catalog::dihedral(4);
        assert!(!is_isomorphic(&q8, &d8));
        assert!(is_isomorphic(&q8, &catalog::dicyclic(2)));
        assert!(is_isomorphic(&d8, &catalog::weyl_b(2)));
        let f = find_isomorphism(&d8, &catalog::weyl_b(2)).unwrap();
        f.verify(&d8, &catalog::weyl_b(2)).unwrap();
    }

    #[test]
    fn s3_is_weyl_a2() {
        assert!(is_isomorphic(&catalog::symmetric(3), &catalog::dihedral(3)));
        assert!(is_isomorphic(&catalog::symmetric(4), &catalog::weyl_d(3)));
    }
}
