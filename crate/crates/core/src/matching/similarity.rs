/// Similarity of two literal values in `[0, 1]`.
///
/// Values equal after trimming and lowercasing score 1. Otherwise the score
/// is `1 - lev(a, b) / max(|a|, |b|)` over characters of the normalized text.
pub fn value_similarity(a: &str, b: &str) -> f64 {
    let a = a.trim().to_lowercase();
    let b = b.trim().to_lowercase();
    if a == b {
        return 1.0;
    }
    strsim::normalized_levenshtein(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Textbook dynamic-programming edit distance.
    fn lev(a: &str, b: &str) -> usize {
        let a: Vec<char> = a.chars().collect();
        let b: Vec<char> = b.chars().collect();
        let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in d.iter_mut().enumerate() {
            row[0] = i;
        }
        for (j, cell) in d[0].iter_mut().enumerate() {
            *cell = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
                d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
            }
        }
        d[a.len()][b.len()]
    }

    #[test]
    fn examples() {
        assert_eq!(value_similarity("Ann", "Ann"), 1.0);
        assert_eq!(value_similarity("abc", "xyz"), 0.0);
        assert_eq!(lev("kitten", "sitting"), 3);
        assert!((value_similarity("kitten", "sitting") - (1.0 - 3.0 / 7.0)).abs() < 1e-12);
    }

    #[test]
    fn case_and_whitespace_fold() {
        assert_eq!(value_similarity("  ANN ", "ann"), 1.0);
        assert_eq!(value_similarity("", "  "), 1.0);
        assert_eq!(value_similarity("", "x"), 0.0);
    }

    #[test]
    fn agrees_with_reference_distance() {
        let words = ["", "a", "ab", "Zoë", "zoe", "Müller", "Muller", "kitten", "sitting", "saturday", "sunday"];
        for a in words {
            for b in words {
                let (na, nb) = (a.to_lowercase(), b.to_lowercase());
                let len = na.chars().count().max(nb.chars().count());
                let expected = if na == nb { 1.0 } else { 1.0 - lev(&na, &nb) as f64 / len as f64 };
                assert!((value_similarity(a, b) - expected).abs() < 1e-12, "{a} {b}");
                assert_eq!(value_similarity(a, b), value_similarity(b, a));
            }
        }
    }
}
