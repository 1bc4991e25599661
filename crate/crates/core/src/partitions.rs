/// All set partitions of `0..m`, as groups of indices, via restricted growth
/// strings. Groups are listed by their smallest member.
pub(crate) fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut rgs = vec![0usize; m];
    loop {
        let groups = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut parts = vec![Vec::new(); groups];
        for (i, &g) in rgs.iter().enumerate() {
            parts[g].push(i);
        }
        out.push(parts);

        // Advance to the next restricted growth string.
        let mut i = m - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::set_partitions;

    #[test]
    fn bell_numbers() {
        let bell = [0, 1, 2, 5, 15, 52, 203];
        for (m, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(m).len(), b, "m = {m}");
        }
    }

    #[test]
    fn partitions_cover_exactly_once() {
        for p in set_partitions(4) {
            let mut seen: Vec<usize> = p.concat();
            seen.sort();
            assert_eq!(seen, vec![0, 1, 2, 3]);
        }
    }
}
