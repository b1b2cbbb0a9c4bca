//! CSV output of benchmark records and load histograms.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::bench::BenchRecord;
use super::loadsim::LoadHistogram;
use crate::error::{Error, Result};

pub const BENCH_HEADER: &str = "family,k,n,algo,pairs,seed,mean_len,sem,savings_pct,mean_candidates,mean_good_routes,success_rate_pct,max_len";
pub const LOAD_HEADER: &str = "load,count,fraction";

pub fn write_bench_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(BENCH_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_bench_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header.join(",") != BENCH_HEADER {
        return Err(Error::Parse(format!("unexpected bench header `{}`", header.join(","))));
    }
    r.deserialize().map(|rec| rec.map_err(Error::from)).collect()
}

/// Rows sorted by ascending load.
pub fn write_histogram_csv<W: Write>(hist: &LoadHistogram, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(LOAD_HEADER.split(','))?;
    for (load, count, fraction) in hist.rows() {
        w.write_record([load.to_string(), count.to_string(), format!("{fraction:.6}")])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_histogram_csv<R: Read>(input: R) -> Result<Vec<(u64, u64, f64)>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().collect::<Vec<_>>().join(",") != LOAD_HEADER {
        return Err(Error::Parse("unexpected load histogram header".into()));
    }
    r.deserialize().map(|rec| rec.map_err(Error::from)).collect()
}

pub fn export_bench(records: &[BenchRecord], path: &Path) -> Result<()> {
    write_bench_csv(records, File::create(path)?)
}

pub fn export_histogram(hist: &LoadHistogram, path: &Path) -> Result<()> {
    write_histogram_csv(hist, File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Algorithm;
    use crate::topology::{Family, NetworkSpec};

    fn fixture() -> Vec<BenchRecord> {
        let base = BenchRecord {
            family: Family::BetaDCell,
            k: 3,
            n: 3,
            algo: Algorithm::GpI,
            pairs: 10_000,
            seed: 42,
            mean_len: Some(8.5),
            sem: Some(0.021375),
            savings_pct: Some(15.25),
            mean_candidates: Some(12.0),
            mean_good_routes: Some(3.125),
            success_rate_pct: Some(41.5),
            max_len: Some(15),
        };
        let skipped = BenchRecord {
            algo: Algorithm::Bfs,
            mean_len: None,
            sem: None,
            savings_pct: None,
            mean_candidates: None,
            mean_good_routes: None,
            success_rate_pct: None,
            max_len: None,
            ..base.clone()
        };
        vec![base, skipped]
    }

    #[test]
    fn empty_is_header_only() {
        let mut buf = Vec::new();
        write_bench_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{BENCH_HEADER}\n"));
    }

    #[test]
    fn bench_roundtrip_and_format() {
        let recs = fixture();
        let mut buf = Vec::new();
        write_bench_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "beta_dcell,3,3,gp_i,10000,42,8.500000,0.021375,15.250000,12.000000,3.125000,41.500000,15");
        assert_eq!(lines[2], "beta_dcell,3,3,bfs,10000,42,,,,,,,");
        assert_eq!(read_bench_csv(&buf[..]).unwrap(), recs);
    }

    #[test]
    fn histogram_rows_sorted() {
        let spec = NetworkSpec::dcell(1, 3).unwrap();
        let h = LoadHistogram::from_loads(spec, Algorithm::Dim, 4, 0, 1, &[3, 0, 1, 0, 3, 2]);
        let mut buf = Vec::new();
        write_histogram_csv(&h, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "load,count,fraction\n0,2,0.333333\n1,1,0.166667\n2,1,0.166667\n3,2,0.333333\n"
        );
        let rows = read_histogram_csv(&buf[..]).unwrap();
        assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }
}
