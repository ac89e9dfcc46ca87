//! CSV conventions shared by every table the crate writes.

use std::io::{self, Write};

/// Crate version recorded in CSV metadata lines.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits in scientific notation; `inf`, `-inf` and `nan`
/// for non-finite values.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// The trailing comment line of every CSV: `# seed=<s> version=<v>`.
pub fn metadata_line(seed: u64) -> String {
    format!("# seed={seed} version={VERSION}")
}

/// Writes `header`, then `rows`, then the metadata line. Fields are quoted
/// only when they need it.
pub fn write_csv<W, I>(out: W, header: &str, rows: I, seed: u64) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = Vec<String>>,
{
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(header.split(','))?;
    for row in rows {
        writer.write_record(&row)?;
    }
    writer.flush()?;
    let mut out = writer.into_inner().map_err(|e| e.into_error())?;
    writeln!(out, "{}", metadata_line(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for x in [0.0, -0.0, 1.0, 0.1, 2.448_436_746_822_227e-3, f64::MIN_POSITIVE, 1e300] {
            let s = fmt_real(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_real(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(fmt_real(f64::NAN), "nan");
    }

    #[test]
    fn table_layout() {
        let mut buf = Vec::new();
        let rows = vec![vec!["x".to_string(), "a,b".to_string()]];
        write_csv(&mut buf, "k,v", rows, 4).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, format!("k,v\nx,\"a,b\"\n# seed=4 version={VERSION}\n"));
    }
}
