//! Cayley-table text format: line 1 is the order `n`, the next `n` lines
//! hold `n` whitespace-separated element indices each (row x lists `x*y` for
//! `y = 0..n-1`). The identity must be index 0; `#` starts a comment.

use super::{greedy_generators_from, GroupError, GroupTable};

pub fn parse_cayley_table(text: &str) -> Result<GroupTable, GroupError> {
    let mut lines = text.lines().filter_map(|line| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some(line)
    });
    let n: usize = lines
        .next()
        .ok_or_else(|| GroupError::CayleyFormat("missing order line".into()))?
        .parse()
        .map_err(|_| GroupError::CayleyFormat("order line is not an integer".into()))?;
    if n == 0 {
        return Err(GroupError::EmptyGroup);
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| GroupError::CayleyFormat(format!("missing row {row}")))?;
        let entries: Vec<u32> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| GroupError::CayleyFormat(format!("bad entry {tok:?} in row {row}")))
            })
            .collect::<Result<_, _>>()?;
        if entries.len() != n {
            return Err(GroupError::CayleyFormat(format!(
                "row {row} has {} entries, expected {n}",
                entries.len()
            )));
        }
        table.extend(entries);
    }
    if lines.next().is_some() {
        return Err(GroupError::CayleyFormat("trailing content after table".into()));
    }
    if table.iter().any(|&v| v as usize >= n) {
        return Err(GroupError::CayleyFormat("entry out of range".into()));
    }
    let gens = greedy_generators_from(&table, n);
    GroupTable::new(n, table, gens, None)
}

#[cfg(test)]
mod tests {
    use super::super::constructors::{cyclic_group, dihedral_group};
    use super::super::is_isomorphic;
    use super::*;

    fn render(g: &GroupTable) -> String {
        let mut out = format!("# test table\n{}\n", g.order());
        for x in 0..g.order() {
            let row: Vec<String> = (0..g.order()).map(|y| g.mul(x, y).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    #[test]
    fn round_trips_s3() {
        let s3 = dihedral_group(3).unwrap();
        let parsed = parse_cayley_table(&render(&s3)).unwrap();
        assert_eq!(parsed.order(), 6);
        assert!(is_isomorphic(&parsed, &s3).unwrap());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# cyclic of order 3\n\n3\n0 1 2  # identity row\n1 2 0\n2 0 1\n";
        let g = parse_cayley_table(text).unwrap();
        assert!(is_isomorphic(&g, &cyclic_group(3).unwrap()).unwrap());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_cayley_table(""),
            Err(GroupError::CayleyFormat(_))
        ));
        assert!(parse_cayley_table("2\n0 1\n1 0\n0 1\n").is_err()); // trailing row
        assert!(parse_cayley_table("2\n0 1\n").is_err()); // missing row
        assert!(parse_cayley_table("2\n0 1 1\n1 0\n").is_err()); // ragged row
        assert!(parse_cayley_table("2\n0 9\n9 0\n").is_err()); // out of range
        // Identity not at index 0.
        assert!(parse_cayley_table("2\n1 0\n0 1\n").is_err());
    }
}
