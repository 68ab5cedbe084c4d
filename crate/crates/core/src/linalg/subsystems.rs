//! Index bookkeeping for operators on tensor products of subsystems.
//!
//! Every routine here produces an index map over row-major flattened
//! matrices, so the same map can rearrange numeric matrices and the affine
//! matrix expressions of the conic layer alike.

/// Splits a flat index into per-subsystem digits (first subsystem most significant).
pub fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

/// Inverse of [`digits`].
pub fn flat(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

pub fn total(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// For each entry of the partially transposed matrix, the flat position of its source entry.
pub fn transpose_map(dims: &[usize], systems: &[usize]) -> Vec<usize> {
    let n = total(dims);
    let mut map = Vec::with_capacity(n * n);
    for r in 0..n {
        let rd = digits(r, dims);
        for c in 0..n {
            let cd = digits(c, dims);
            let (mut sr, mut sc) = (rd.clone(), cd.clone());
            for &k in systems {
                sr[k] = cd[k];
                sc[k] = rd[k];
            }
            map.push(flat(&sr, dims) * n + flat(&sc, dims));
        }
    }
    map
}

/// Source positions for reordering subsystems: output subsystem `k` is input subsystem `perm[k]`.
pub fn permute_map(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    let n = total(dims);
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut src_of = vec![0usize; n];
    for (o, slot) in src_of.iter_mut().enumerate() {
        let od = digits(o, &out_dims);
        let mut id = vec![0; dims.len()];
        for (k, &p) in perm.iter().enumerate() {
            id[p] = od[k];
        }
        *slot = flat(&id, dims);
    }
    let mut map = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            map.push(src_of[r] * n + src_of[c]);
        }
    }
    map
}

/// For each entry of the reduced matrix, the source positions that sum into it.
/// Returns the reduced dimension alongside the map.
pub fn partial_trace_map(dims: &[usize], traced: &[usize]) -> (usize, Vec<Vec<usize>>) {
    let kept: Vec<usize> = (0..dims.len()).filter(|k| !traced.contains(k)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let m = total(&kept_dims);
    let t = total(&traced_dims);
    let n = total(dims);
    let mut map = Vec::with_capacity(m * m);
    for r in 0..m {
        let rd = digits(r, &kept_dims);
        for c in 0..m {
            let cd = digits(c, &kept_dims);
            let mut sources = Vec::with_capacity(t);
            for s in 0..t {
                let sd = digits(s, &traced_dims);
                let mut full_r = vec![0; dims.len()];
                let mut full_c = vec![0; dims.len()];
                for (i, &k) in kept.iter().enumerate() {
                    full_r[k] = rd[i];
                    full_c[k] = cd[i];
                }
                for (i, &k) in traced.iter().enumerate() {
                    full_r[k] = sd[i];
                    full_c[k] = sd[i];
                }
                sources.push(flat(&full_r, dims) * n + flat(&full_c, dims));
            }
            map.push(sources);
        }
    }
    (m, map)
}
