//! Machine-readable artifacts: per-set analysis reports and survey rows.
//! Rationals are always written as `num/den` strings.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cm::{analyze, cm_tiling_set, laba_spectrum, minimal_period, CmAnalysis, RationalSpectrum, TilingSet};
use crate::error::Result;
use crate::lift::{lift_profile, LiftProfile};
use crate::poly::IntSet;
use crate::rational::Fraction;
use crate::search::{Survey, SurveySummary, ZnClassification};
use crate::verify::{is_spectrum_z, is_tiling_z, Certificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub set: IntSet,
    pub cm: CmAnalysis,
    pub cm_holds: bool,
    pub laba_spectrum: Vec<Fraction>,
    /// Period of `Γ_Ł + Z`, i.e. `1 / p_Ł`.
    pub laba_period: Fraction,
    pub minimal_period: Fraction,
    /// Absent when the construction has coefficients outside {0, 1}.
    pub tiling_set: Option<TilingSet>,
    pub tiling_set_error: Option<String>,
    pub spectrum_certificate: Certificate,
    pub tiling_certificate: Option<Certificate>,
    pub timing: Timing,
}

impl Report {
    pub fn build(input: &str, set: &IntSet) -> Result<Report> {
        let start = Instant::now();
        let cm = analyze(set)?;
        let gamma = laba_spectrum(&cm);
        let min_period = minimal_period(&gamma)?;
        let spectrum_certificate = is_spectrum_z(set, &gamma)?;
        let (tiling_set, tiling_set_error, tiling_certificate) = match cm_tiling_set(&cm) {
            Ok(t) => {
                let cert = is_tiling_z(set, &t)?;
                (Some(t), None, Some(cert))
            }
            Err(e) => (None, Some(e.to_string()), None),
        };
        Ok(Report {
            input: input.to_string(),
            set: set.clone(),
            cm_holds: cm.has_cm_property(),
            cm,
            laba_spectrum: gamma.fractions(),
            laba_period: gamma.period(),
            minimal_period: min_period,
            tiling_set,
            tiling_set_error,
            spectrum_certificate,
            tiling_certificate,
            timing: Timing { elapsed_micros: start.elapsed().as_micros() as u64 },
        })
    }

    pub fn certificates_verify(&self) -> bool {
        self.spectrum_certificate.verdict && self.tiling_certificate.as_ref().is_some_and(|c| c.verdict)
    }

    /// Recomputes both verdicts from the serialized fields alone.
    pub fn reverify(&self) -> Result<(bool, Option<bool>)> {
        let gamma = RationalSpectrum::from_fractions(&self.laba_spectrum, self.laba_period)?;
        let spectral = is_spectrum_z(&self.set, &gamma)?.verdict;
        let tiling = match &self.tiling_set {
            Some(t) => Some(is_tiling_z(&self.set, t)?.verdict),
            None => None,
        };
        Ok((spectral, tiling))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let join = |v: &[Fraction]| v.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "set            {{{}}}", self.set);
        let s_a: Vec<String> = self.cm.s_a_values().iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "S_A            {{{}}}", s_a.join(", "));
        let t2_literal = match self.cm.t2_literal {
            Some(b) => b.to_string(),
            None => "not enumerated".into(),
        };
        let _ = writeln!(out, "T1             {}", self.cm.t1);
        let _ = writeln!(out, "T2             {} (all subsets: {t2_literal})", self.cm.t2);
        let _ = writeln!(out, "M              {}", self.cm.m);
        let _ = writeln!(out, "p_L            {}", self.cm.laba_period);
        let _ = writeln!(out, "spectrum       {{{}}} + Z", join(&self.laba_spectrum));
        let _ = writeln!(out, "period         {}", self.laba_period);
        let _ = writeln!(out, "minimal period {}", self.minimal_period);
        match (&self.tiling_set, &self.tiling_set_error) {
            (Some(t), _) => {
                let _ = writeln!(out, "tiling set     {{{}}} + {}Z", t.block, t.modulus);
            }
            (None, Some(e)) => {
                let _ = writeln!(out, "tiling set     unavailable: {e}");
            }
            (None, None) => {}
        }
        let verdict = |c: &Certificate| if c.verdict { "verified" } else { "refuted" };
        let _ = writeln!(out, "spectrum cert  {}", verdict(&self.spectrum_certificate));
        if let Some(c) = &self.tiling_certificate {
            let _ = writeln!(out, "tiling cert    {}", verdict(c));
        }
        let _ = writeln!(out, "CM property    {}", self.cm_holds);
        out
    }
}

/// One survey row; field order is the JSONL key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub n: u64,
    pub set: Vec<u64>,
    pub tile: bool,
    pub tile_witness: Option<Vec<u64>>,
    pub spectral: bool,
    pub spectrum_witness: Option<Vec<u64>>,
    pub cm_t1: bool,
    pub cm_t2: bool,
    pub s_a: Vec<u64>,
    pub orbit: u64,
}

impl From<&ZnClassification> for SurveyRow {
    fn from(c: &ZnClassification) -> Self {
        SurveyRow {
            n: c.n,
            set: c.set.elements(),
            tile: c.is_tile(),
            tile_witness: c.tile_witness.as_ref().map(|w| w.elements()),
            spectral: c.is_spectral(),
            spectrum_witness: c.spectrum_witness.as_ref().map(|w| w.elements()),
            cm_t1: c.cm.t1,
            cm_t2: c.cm.t2,
            s_a: c.cm.s_a_values(),
            orbit: c.orbit_size,
        }
    }
}

pub const CSV_HEADER: &str = "n,set,tile,tile_witness,spectral,spectrum_witness,cm_t1,cm_t2,s_a,orbit";

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a SurveySummary,
}

pub fn write_jsonl<W: Write>(survey: &Survey, mut w: W) -> io::Result<()> {
    for row in &survey.rows {
        serde_json::to_writer(&mut w, &SurveyRow::from(row))?;
        w.write_all(b"\n")?;
    }
    serde_json::to_writer(&mut w, &SummaryLine { summary: &survey.summary })?;
    w.write_all(b"\n")
}

fn csv_list(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Lists are space-separated within a field; a missing witness is empty.
pub fn write_csv<W: Write>(survey: &Survey, mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for row in &survey.rows {
        let r = SurveyRow::from(row);
        let opt = |o: &Option<Vec<u64>>| o.as_deref().map(csv_list).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            csv_list(&r.set),
            r.tile,
            opt(&r.tile_witness),
            r.spectral,
            opt(&r.spectrum_witness),
            r.cm_t1,
            r.cm_t2,
            csv_list(&r.s_a),
            r.orbit
        )?;
    }
    let s = &survey.summary;
    writeln!(
        w,
        "# summary n={} units={} classes={} subsets={} tiles={} spectral={} tile_not_spectral={} \
         spectral_not_tile={} tiles_failing_t1={} tiles_failing_t2={} t2_readings_differ={} discrepancies={}",
        s.n,
        s.units,
        s.classes,
        s.subsets,
        s.tiles,
        s.spectral,
        s.tile_not_spectral,
        s.spectral_not_tile,
        s.tiles_failing_t1,
        s.tiles_failing_t2,
        s.t2_readings_differ,
        s.discrepancies()
    )
}

#[derive(Serialize)]
struct LiftRow<'a> {
    set: Vec<u64>,
    tile: bool,
    spectral: bool,
    #[serde(flatten)]
    profile: &'a LiftProfile,
}

/// One line per surveyed class with the verdicts of its block lifts
/// `A + n{0,…,k-1}` for `k = 1..=k_max` and where they stop changing.
pub fn write_lift_jsonl<W: Write>(survey: &Survey, k_max: u64, mut w: W) -> Result<()> {
    for row in &survey.rows {
        let profile = lift_profile(&row.set, k_max)?;
        let line = LiftRow {
            set: row.set.elements(),
            tile: row.is_tile(),
            spectral: row.is_spectral(),
            profile: &profile,
        };
        serde_json::to_writer(&mut w, &line).expect("serializable");
        w.write_all(b"\n").map_err(|e| crate::Error::Io(e.to_string()))?;
    }
    Ok(())
}
