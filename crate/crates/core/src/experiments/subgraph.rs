use crate::graph::Graph;

/// Whether `pattern` embeds into `host` as a (not necessarily induced)
/// subgraph. Backtracking with pattern vertices taken in order of degree,
/// each new one adjacent to an earlier one where possible.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    let order = pattern_order(pattern);
    let mut image = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; host.n()];
    embed(host, pattern, &order, 0, &mut image, &mut used)
}

fn pattern_order(p: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(p.n());
    let mut placed = vec![false; p.n()];
    while order.len() < p.n() {
        let next = (0..p.n())
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let links = p.neighbours(x).iter().filter(|&&y| placed[y]).count();
                (links, p.degree(x), std::cmp::Reverse(x))
            })
            .expect("vertices remain");
        placed[next] = true;
        order.push(next);
    }
    order
}

fn embed(
    host: &Graph,
    pattern: &Graph,
    order: &[usize],
    at: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(at) else {
        return true;
    };
    let need = pattern.degree(x);
    let mapped: Vec<usize> = pattern
        .neighbours(x)
        .iter()
        .filter(|&&y| image[y] != usize::MAX)
        .map(|&y| image[y])
        .collect();
    let candidates: Vec<usize> = match mapped.first() {
        Some(&anchor) => host.neighbours(anchor).to_vec(),
        None => (0..host.n()).collect(),
    };
    for h in candidates {
        if used[h] || host.degree(h) < need || !mapped.iter().all(|&m| host.has_edge(h, m)) {
            continue;
        }
        image[x] = h;
        used[h] = true;
        if embed(host, pattern, order, at + 1, image, used) {
            return true;
        }
        used[h] = false;
        image[x] = usize::MAX;
    }
    false
}

/// Whether `g` contains the witness `J`: a triangle whose three vertices
/// have at least four further common neighbours.
pub fn contains_j(g: &Graph) -> bool {
    for &(a, b) in g.edges() {
        for &c in g.neighbours(b) {
            if c <= b || !g.has_edge(a, c) {
                continue;
            }
            let common = g
                .neighbours(a)
                .iter()
                .filter(|&&t| t != b && t != c && g.has_edge(b, t) && g.has_edge(c, t))
                .count();
            if common >= 4 {
                return true;
            }
        }
    }
    false
}
