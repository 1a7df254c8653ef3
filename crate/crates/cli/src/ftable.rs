//! Reader for `f`-table files: a `q=<int>` header, then `q` rows of `q`
//! field codes, row `x1`, column `y1`.

use crate::error::{CliError, CliResult};

pub fn parse(text: &str) -> CliResult<(u64, Vec<u32>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CliError::BadInput("empty f-table".into()))?;
    let q: u64 = header
        .strip_prefix("q=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| CliError::BadInput(format!("expected header `q=<int>`, got `{header}`")))?;
    let mut table = Vec::new();
    let mut rows = 0u64;
    for line in lines {
        let row: Vec<u32> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse()
                    .map_err(|_| CliError::BadInput(format!("bad f-table entry `{s}`")))
            })
            .collect::<CliResult<_>>()?;
        if row.len() as u64 != q {
            return Err(CliError::BadInput(format!(
                "f-table row {rows} has {} entries, expected {q}",
                row.len()
            )));
        }
        table.extend(row);
        rows += 1;
    }
    if rows != q {
        return Err(CliError::BadInput(format!("f-table has {rows} rows, expected {q}")));
    }
    Ok((q, table))
}
