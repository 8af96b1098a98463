//! Storage and cost projections for replicated ledgers under large
//! authorization payloads.
//!
//! Everything here is pure calculation over published or assumed parameters:
//! transaction byte counts, SegWit weight accounting, a signature-scheme
//! size catalog, per-network storage growth projections, and the
//! multiplicative overheads that turn raw media volume into infrastructure
//! cost.
//!
//! # Units
//!
//! Decimal (SI) units throughout: 1 TB = 10^12 bytes, 1 EB = 10^6 TB =
//! 10^9 GB. Internal arithmetic sticks to integer gigabytes (and tenths of a
//! terabyte for the projection figure) so rendered tables are byte-stable;
//! floats appear only where a quantity is genuinely fractional (overhead
//! factors, catch-up years).
//!
//! # Ranges
//!
//! Published inputs are coarse, so parameters carry `(lo, hi)` intervals.
//! Interval arithmetic propagates bounds; midpoints are reported alongside.

use serde::Serialize;
use thiserror::Error;

/// Gigabytes per terabyte (decimal).
pub const GB_PER_TB: u64 = 1_000;
/// Terabytes per exabyte (decimal).
pub const TB_PER_EB: u64 = 1_000_000;
/// Gigabytes per exabyte (decimal).
pub const GB_PER_EB: u64 = 1_000_000_000;

/// Consensus cap on block weight units.
pub const MAX_BLOCK_WEIGHT: u64 = 4_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CostModelError {
    #[error("{0}")]
    Domain(String),
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("config error: {0}")]
    Config(String),
}

/// A closed integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Range64 {
    pub lo: u64,
    pub hi: u64,
}

impl Range64 {
    pub fn new(lo: u64, hi: u64) -> Self {
        assert!(lo <= hi, "range bounds out of order: {lo} > {hi}");
        Range64 { lo, hi }
    }

    pub fn point(v: u64) -> Self {
        Range64 { lo: v, hi: v }
    }

    pub fn mid(self) -> u64 {
        self.lo + (self.hi - self.lo) / 2
    }

    pub fn scale(self, k: u64) -> Self {
        Range64 {
            lo: self.lo * k,
            hi: self.hi * k,
        }
    }

}

impl std::ops::Add for Range64 {
    type Output = Range64;

    fn add(self, other: Range64) -> Range64 {
        Range64 {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }
}

impl std::ops::Mul for Range64 {
    type Output = Range64;

    fn mul(self, other: Range64) -> Range64 {
        Range64 {
            lo: self.lo * other.lo,
            hi: self.hi * other.hi,
        }
    }
}

/// Renders an integer quantity of `unit/divisor` as a trimmed decimal
/// string: `format_scaled(2_160_000_000, GB_PER_EB)` is `"2.16"`. Exact by
/// construction — no floating point is involved.
pub fn format_scaled(value: u64, divisor: u64) -> String {
    debug_assert!(is_power_of_ten(divisor), "divisor must be a power of ten");
    let whole = value / divisor;
    let rem = value % divisor;
    if rem == 0 {
        return whole.to_string();
    }
    let width = divisor.ilog10() as usize;
    let mut frac = format!("{rem:0width$}");
    while frac.ends_with('0') {
        frac.pop();
    }
    format!("{whole}.{frac}")
}

fn is_power_of_ten(mut v: u64) -> bool {
    if v == 0 {
        return false;
    }
    while v.is_multiple_of(10) {
        v /= 10;
    }
    v == 1
}

// ---------------------------------------------------------------------------
// Transaction sizes
// ---------------------------------------------------------------------------

/// Legacy (pre-SegWit) transaction size estimate: ~10 bytes of base fields,
/// ~148 bytes per input (outpoint, scriptSig with signature + public key,
/// sequence), ~34 bytes per output (value + scriptPubKey).
pub fn bitcoin_tx_size(inputs: u64, outputs: u64) -> Result<u64, CostModelError> {
    if inputs == 0 || outputs == 0 {
        return Err(CostModelError::Domain(
            "a transaction needs at least one input and one output".into(),
        ));
    }
    Ok(10 + 148 * inputs + 34 * outputs)
}

/// SegWit weight accounting: weight = 3·base + total, vbytes = ⌈weight/4⌉.
/// Witness bytes (those in `total` but not `base`) thus weigh a quarter of
/// base bytes.
pub fn segwit_weight(base_size: u64, total_size: u64) -> Result<(u64, u64), CostModelError> {
    if total_size < base_size {
        return Err(CostModelError::Domain(
            "total size cannot be smaller than base size".into(),
        ));
    }
    let weight = 3 * base_size + total_size;
    let vbytes = weight.div_ceil(4);
    Ok((weight, vbytes))
}

// ---------------------------------------------------------------------------
// Signature scheme catalog
// ---------------------------------------------------------------------------

/// Published size parameters for one authorization scheme. Only sizes are
/// modeled; no signature math runs anywhere in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureSchemeSpec {
    /// Lookup key, e.g. `"ECDSA"`.
    pub name: String,
    /// Qualifier for display, e.g. `"secp256k1"`.
    pub note: String,
    pub public_key_bytes: Range64,
    pub signature_bytes: Range64,
    /// Whole-transaction size used in the size-comparison figure.
    pub representative_tx_bytes: u64,
}

impl SignatureSchemeSpec {
    pub fn display_name(&self) -> String {
        if self.note.is_empty() {
            self.name.clone()
        } else {
            format!("{} ({})", self.name, self.note)
        }
    }

    pub fn validate(&self) -> Result<(), CostModelError> {
        if self.representative_tx_bytes == 0 {
            return Err(CostModelError::Config(format!(
                "scheme {:?} has a zero representative transaction size",
                self.name
            )));
        }
        Ok(())
    }
}

/// The four-scheme catalog: classical ECDSA, two standardized post-quantum
/// schemes, and the classic hash-based one-time construction.
pub fn default_catalog() -> Vec<SignatureSchemeSpec> {
    vec![
        SignatureSchemeSpec {
            name: "ECDSA".into(),
            note: "secp256k1".into(),
            public_key_bytes: Range64::point(64),
            signature_bytes: Range64::point(65),
            representative_tx_bytes: 200,
        },
        SignatureSchemeSpec {
            name: "Dilithium".into(),
            note: "level 2-5".into(),
            public_key_bytes: Range64::new(1_000, 2_500),
            signature_bytes: Range64::new(2_000, 4_500),
            representative_tx_bytes: 3_000,
        },
        SignatureSchemeSpec {
            name: "SPHINCS+".into(),
            note: String::new(),
            public_key_bytes: Range64::point(32),
            signature_bytes: Range64::new(10_000, 30_000),
            representative_tx_bytes: 20_000,
        },
        SignatureSchemeSpec {
            name: "Lamport".into(),
            note: "hash-based".into(),
            public_key_bytes: Range64::point(32_000),
            signature_bytes: Range64::point(16_000),
            // Signature-dominated: one signature's worth of on-chain bytes.
            representative_tx_bytes: 16_000,
        },
    ]
}

/// Looks a scheme up by name (case-insensitive) and returns its
/// representative transaction size.
pub fn tx_size_for_scheme(
    catalog: &[SignatureSchemeSpec],
    name: &str,
) -> Result<u64, CostModelError> {
    catalog
        .iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .map(|s| s.representative_tx_bytes)
        .ok_or_else(|| CostModelError::UnknownScheme(name.to_string()))
}

// ---------------------------------------------------------------------------
// Network profiles and storage projection
// ---------------------------------------------------------------------------

/// One network's node population and baseline chain growth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetworkProfile {
    pub name: String,
    /// Storage class of the counted nodes, e.g. `"full"` or `"archive"`.
    pub node_class: String,
    pub node_count: Range64,
    pub growth_gb_per_year: Range64,
}

impl NetworkProfile {
    pub fn validate(&self) -> Result<(), CostModelError> {
        if self.node_count.lo == 0 {
            return Err(CostModelError::Config(format!(
                "profile {:?} has a zero node count",
                self.name
            )));
        }
        Ok(())
    }

    /// Baseline (pre-multiplier) chain growth over a decade, in GB.
    pub fn ten_year_growth_gb(&self) -> Range64 {
        self.growth_gb_per_year.scale(10)
    }
}

/// The profiles behind the aggregate-storage table: Bitcoin counted as total
/// participating nodes, Ethereum split into full and archive populations,
/// and the smaller UTXO chains (Litecoin, Dogecoin, Bitcoin Cash, Bitcoin
/// SV) pooled with Bitcoin-like per-node growth.
pub fn default_profiles() -> Vec<NetworkProfile> {
    vec![
        NetworkProfile {
            name: "Bitcoin".into(),
            node_class: "full".into(),
            node_count: Range64::point(72_000),
            growth_gb_per_year: Range64::new(50, 70),
        },
        NetworkProfile {
            name: "Ethereum (full)".into(),
            node_class: "full".into(),
            node_count: Range64::point(12_000),
            growth_gb_per_year: Range64::new(150, 250),
        },
        NetworkProfile {
            name: "Ethereum (archive)".into(),
            node_class: "archive".into(),
            node_count: Range64::point(1_000),
            growth_gb_per_year: Range64::point(2_000),
        },
        NetworkProfile {
            name: "Other UTXO".into(),
            node_class: "full".into(),
            node_count: Range64::new(2_100, 3_000),
            growth_gb_per_year: Range64::point(60),
        },
    ]
}

/// Alternative Bitcoin profile counting only publicly reachable nodes.
pub fn bitcoin_reachable_profile() -> NetworkProfile {
    NetworkProfile {
        name: "Bitcoin (reachable only)".into(),
        node_class: "full".into(),
        node_count: Range64::new(13_000, 20_000),
        growth_gb_per_year: Range64::new(50, 70),
    }
}

/// Multiplicative overheads between raw media cost and deployed
/// infrastructure cost.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OverheadComponents {
    /// Headroom, filesystem overhead, indexing.
    pub usable: f64,
    /// Replication / RAID.
    pub redundancy: f64,
    /// Servers, enclosures, controllers, memory, networking.
    pub system: (f64, f64),
    /// Installation, provisioning, migration.
    pub deployment: f64,
    /// Replacement and failure over a multi-year horizon.
    pub lifecycle: f64,
}

impl Default for OverheadComponents {
    fn default() -> Self {
        OverheadComponents {
            usable: 1.3,
            redundancy: 2.0,
            system: (2.0, 2.5),
            deployment: 1.5,
            lifecycle: 1.5,
        }
    }
}

/// Tunable model parameters with the published defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostAssumptions {
    /// Stress-case scale-up applied to baseline chain growth.
    pub signature_multiplier: u64,
    /// Enterprise SSD price, USD per TB.
    pub media_price_per_tb: u64,
    pub overhead: OverheadComponents,
    /// Overall raw-to-deployed multiplier used for the headline cost band.
    /// Deliberately wider than the component product; both are reported.
    pub overall_multiplier_band: Range64,
}

impl Default for CostAssumptions {
    fn default() -> Self {
        CostAssumptions {
            signature_multiplier: 50,
            media_price_per_tb: 300,
            overhead: OverheadComponents::default(),
            overall_multiplier_band: Range64::new(10, 20),
        }
    }
}

impl CostAssumptions {
    pub fn validate(&self) -> Result<(), CostModelError> {
        let o = &self.overhead;
        let factors = [
            o.usable,
            o.redundancy,
            o.system.0,
            o.system.1,
            o.deployment,
            o.lifecycle,
        ];
        if factors.iter().any(|f| *f < 1.0) || o.system.0 > o.system.1 {
            return Err(CostModelError::Config(
                "overhead factors must be at least 1 with ordered bounds".into(),
            ));
        }
        if self.signature_multiplier == 0 || self.media_price_per_tb == 0 {
            return Err(CostModelError::Config(
                "multiplier and media price must be positive".into(),
            ));
        }
        if self.overall_multiplier_band.lo < 1 {
            return Err(CostModelError::Config(
                "overall multiplier band must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One network's projected decade of signature-induced storage growth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StorageRow {
    pub network: String,
    pub node_count: Range64,
    /// Baseline decade growth before the multiplier, GB.
    pub decade_growth_gb: Range64,
    /// Additional data per node over the decade, GB.
    pub per_node_gb: Range64,
    pub per_node_gb_mid: u64,
    /// Additional replicated storage across the network, GB.
    pub total_gb: Range64,
    pub total_gb_mid: u64,
}

/// The aggregate-storage table plus its subtotal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StorageTable {
    pub signature_multiplier: u64,
    pub rows: Vec<StorageRow>,
    pub subtotal_gb: Range64,
    pub subtotal_gb_mid: u64,
}

impl StorageTable {
    /// Model subtotal rounded to the nearest half-exabyte, in TB — the
    /// headline figure cost estimates start from.
    pub fn subtotal_rounded_tb(&self) -> u64 {
        let half_eb_gb = GB_PER_EB / 2;
        let halves = (self.subtotal_gb_mid + half_eb_gb / 2) / half_eb_gb;
        halves * (TB_PER_EB / 2)
    }
}

/// Projects each profile a decade forward: per-node addition = 10-year
/// baseline growth × multiplier; network total = per-node × node count.
/// Midpoints are products of midpoint inputs.
pub fn aggregate_storage(
    profiles: &[NetworkProfile],
    assumptions: &CostAssumptions,
) -> Result<StorageTable, CostModelError> {
    assumptions.validate()?;
    let k = assumptions.signature_multiplier;
    let mut rows = Vec::with_capacity(profiles.len());
    let mut subtotal = Range64::point(0);
    let mut subtotal_mid = 0u64;
    for profile in profiles {
        profile.validate()?;
        let decade = profile.ten_year_growth_gb();
        let per_node = decade.scale(k);
        let per_node_mid = decade.mid() * k;
        let total = per_node * profile.node_count;
        let total_mid = per_node_mid * profile.node_count.mid();
        subtotal = subtotal + total;
        subtotal_mid += total_mid;
        rows.push(StorageRow {
            network: profile.name.clone(),
            node_count: profile.node_count,
            decade_growth_gb: decade,
            per_node_gb: per_node,
            per_node_gb_mid: per_node_mid,
            total_gb: total,
            total_gb_mid: total_mid,
        });
    }
    Ok(StorageTable {
        signature_multiplier: k,
        rows,
        subtotal_gb: subtotal,
        subtotal_gb_mid: subtotal_mid,
    })
}

// ---------------------------------------------------------------------------
// Costs
// ---------------------------------------------------------------------------

/// Raw media cost and the deployed-infrastructure band for a storage volume.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfrastructureCost {
    pub storage_tb: u64,
    pub media_price_per_tb: u64,
    pub raw_media_usd: u64,
    pub band_usd: Range64,
    /// `band_usd` rounded to whole billions for display.
    pub display_band_billion_usd: Range64,
}

impl InfrastructureCost {
    pub fn display_band(&self) -> String {
        format!(
            "${}-{} B",
            self.display_band_billion_usd.lo, self.display_band_billion_usd.hi
        )
    }
}

/// Prices a storage volume (in EB) at the assumed media cost, then widens by
/// the overall multiplier band.
pub fn infrastructure_cost(
    storage_eb: f64,
    assumptions: &CostAssumptions,
) -> Result<InfrastructureCost, CostModelError> {
    assumptions.validate()?;
    // `<= 0.0` alone would let NaN through; the finiteness check closes that.
    if storage_eb <= 0.0 || !storage_eb.is_finite() {
        return Err(CostModelError::Domain(
            "storage volume must be positive".into(),
        ));
    }
    let storage_tb = (storage_eb * TB_PER_EB as f64).round() as u64;
    let raw = storage_tb * assumptions.media_price_per_tb;
    let band = assumptions.overall_multiplier_band.scale(raw);
    const BILLION: u64 = 1_000_000_000;
    let display = Range64 {
        lo: (band.lo + BILLION / 2) / BILLION,
        hi: (band.hi + BILLION / 2) / BILLION,
    };
    Ok(InfrastructureCost {
        storage_tb,
        media_price_per_tb: assumptions.media_price_per_tb,
        raw_media_usd: raw,
        band_usd: band,
        display_band_billion_usd: display,
    })
}

/// Product of the listed overhead components, `(low, high)`. Narrower than
/// the headline band; both are reported.
pub fn component_multiplier_product(assumptions: &CostAssumptions) -> (f64, f64) {
    let o = &assumptions.overhead;
    let base = o.usable * o.redundancy * o.deployment * o.lifecycle;
    (base * o.system.0, base * o.system.1)
}

/// Years of hardware improvement needed to absorb a capacity multiplier,
/// assuming capacity doubles every `doubling_period_years` at constant
/// price: `doubling_period × log2(multiplier)`.
pub fn hardware_catchup_years(multiplier: f64, doubling_period_years: f64) -> f64 {
    debug_assert!(multiplier >= 1.0 && doubling_period_years > 0.0);
    doubling_period_years * multiplier.log2()
}

// ---------------------------------------------------------------------------
// Figures
// ---------------------------------------------------------------------------

/// `(label, representative transaction bytes)` for the size-comparison
/// figure's three schemes.
pub fn fig1_rows(catalog: &[SignatureSchemeSpec]) -> Result<Vec<(String, u64)>, CostModelError> {
    ["ECDSA", "Dilithium", "SPHINCS+"]
        .iter()
        .map(|name| Ok((name.to_string(), tx_size_for_scheme(catalog, name)?)))
        .collect()
}

/// Storage projection row for one node configuration. Values are tenths of
/// a terabyte and per-row rational multipliers, keeping every projected
/// value exact: full nodes use the headline 50×, archive nodes the
/// back-solved 160/3 ≈ 53.3×.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionRow {
    pub label: &'static str,
    pub current_deci_tb: u64,
    pub multiplier_num: u64,
    pub multiplier_den: u64,
}

impl ProjectionRow {
    pub fn projected_deci_tb(&self) -> u64 {
        self.current_deci_tb * self.multiplier_num / self.multiplier_den
    }
}

/// The node-storage projection chart's two configurations.
pub fn fig2_projections() -> Vec<ProjectionRow> {
    vec![
        ProjectionRow {
            label: "Full",
            current_deci_tb: 12,
            multiplier_num: 50,
            multiplier_den: 1,
        },
        ProjectionRow {
            label: "Archive",
            current_deci_tb: 150,
            multiplier_num: 160,
            multiplier_den: 3,
        },
    ]
}

/// Generic storage projection: current volume scaled by a multiplier.
pub fn node_storage_projection(current_tb: f64, multiplier: f64) -> f64 {
    debug_assert!(current_tb > 0.0 && multiplier >= 1.0);
    current_tb * multiplier
}

/// CSV for the transaction-size comparison figure.
pub fn render_fig1_csv(catalog: &[SignatureSchemeSpec]) -> Result<String, CostModelError> {
    let mut out = String::from("scheme,tx_bytes\n");
    for (name, bytes) in fig1_rows(catalog)? {
        out.push_str(&format!("{name},{bytes}\n"));
    }
    Ok(out)
}

/// CSV for the node-storage projection figure: four bars, current and
/// projected per configuration.
pub fn render_fig2_csv() -> String {
    let mut out = String::from("configuration,storage_tb\n");
    for row in fig2_projections() {
        out.push_str(&format!(
            "{} (Current),{}\n",
            row.label,
            format_scaled(row.current_deci_tb, 10)
        ));
        out.push_str(&format!(
            "{} (PQ),{}\n",
            row.label,
            format_scaled(row.projected_deci_tb(), 10)
        ));
    }
    out
}

/// CSV for the aggregate-storage table (midpoint values).
pub fn render_table2_csv(table: &StorageTable) -> String {
    let mut out = String::from("network,ten_year_growth_tb,per_node_tb,total_eb\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.network,
            format_scaled(row.decade_growth_gb.mid(), GB_PER_TB),
            format_scaled(row.per_node_gb_mid, GB_PER_TB),
            format_scaled(row.total_gb_mid, GB_PER_EB),
        ));
    }
    out.push_str(&format!(
        "Subtotal,,,{}\n",
        format_scaled(table.subtotal_gb_mid, GB_PER_EB)
    ));
    out
}

// ---------------------------------------------------------------------------
// Full report
// ---------------------------------------------------------------------------

/// Everything the cost model produces, bundled with its inputs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostReport {
    pub assumptions: CostAssumptions,
    pub storage: StorageTable,
    /// Cost computed from the model's own subtotal midpoint.
    pub cost_from_model_subtotal: InfrastructureCost,
    /// Cost computed from the subtotal rounded to the nearest half-EB —
    /// the headline numbers.
    pub cost_from_rounded_subtotal: InfrastructureCost,
    pub component_multiplier: (f64, f64),
    pub catchup_50x_years: f64,
    pub catchup_100x_years: f64,
}

/// Builds the full report from profiles and assumptions.
pub fn build_cost_report(
    profiles: &[NetworkProfile],
    assumptions: &CostAssumptions,
) -> Result<CostReport, CostModelError> {
    let storage = aggregate_storage(profiles, assumptions)?;
    let model_eb = storage.subtotal_gb_mid as f64 / GB_PER_EB as f64;
    let rounded_eb = storage.subtotal_rounded_tb() as f64 / TB_PER_EB as f64;
    let cost_from_model_subtotal = infrastructure_cost(model_eb, assumptions)?;
    let cost_from_rounded_subtotal = infrastructure_cost(rounded_eb, assumptions)?;
    Ok(CostReport {
        assumptions: assumptions.clone(),
        storage,
        cost_from_model_subtotal,
        cost_from_rounded_subtotal,
        component_multiplier: component_multiplier_product(assumptions),
        catchup_50x_years: hardware_catchup_years(50.0, 2.0),
        catchup_100x_years: hardware_catchup_years(100.0, 2.0),
    })
}

impl CostReport {
    /// Aligned, deterministic text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "Aggregate replicated storage over 10 years at {}x growth\n\n",
            self.assumptions.signature_multiplier
        ));
        out.push_str(&format!(
            "{:<22} {:>14} {:>16} {:>18}\n",
            "network", "10-yr growth", "per node", "network total"
        ));
        for row in &self.storage.rows {
            out.push_str(&format!(
                "{:<22} {:>11} TB {:>13} TB {:>15} EB\n",
                row.network,
                format_scaled(row.decade_growth_gb.mid(), GB_PER_TB),
                format_scaled(row.per_node_gb_mid, GB_PER_TB),
                format_scaled(row.total_gb_mid, GB_PER_EB),
            ));
        }
        out.push_str(&format!(
            "{:<22} {:>14} {:>16} {:>15} EB\n",
            "subtotal",
            "",
            "",
            format_scaled(self.storage.subtotal_gb_mid, GB_PER_EB)
        ));
        out.push_str(&format!(
            "{:<22} {:>14} {:>16} {:>18}\n",
            "layer-2 networks", "", "", "unquantified"
        ));
        out.push_str(&format!(
            "\nInterval: {} - {} EB; midpoint {} EB, rounded {} EB\n",
            format_scaled(self.storage.subtotal_gb.lo, GB_PER_EB),
            format_scaled(self.storage.subtotal_gb.hi, GB_PER_EB),
            format_scaled(self.storage.subtotal_gb_mid, GB_PER_EB),
            format_scaled(self.storage.subtotal_rounded_tb(), TB_PER_EB),
        ));
        let cost = &self.cost_from_rounded_subtotal;
        out.push_str(&format!(
            "\nRaw media at ${}/TB for {} EB: ${:.2} B\n",
            cost.media_price_per_tb,
            format_scaled(cost.storage_tb, TB_PER_EB),
            cost.raw_media_usd as f64 / 1e9,
        ));
        out.push_str(&format!(
            "Deployed-infrastructure band ({}x-{}x): {}\n",
            self.assumptions.overall_multiplier_band.lo,
            self.assumptions.overall_multiplier_band.hi,
            cost.display_band(),
        ));
        out.push_str(&format!(
            "Component-product multiplier: {:.1}x-{:.3}x (narrower than the headline band)\n",
            self.component_multiplier.0, self.component_multiplier.1,
        ));
        out.push_str(&format!(
            "\nHardware catch-up at 2-year capacity doubling: 50x in {:.2} years, 100x in {:.2} years\n",
            self.catchup_50x_years, self.catchup_100x_years,
        ));
        out
    }
}

// ---------------------------------------------------------------------------
// Config loading
// ---------------------------------------------------------------------------

mod config {
    use serde::Deserialize;

    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(super) enum RawRange {
        Point(u64),
        Pair([u64; 2]),
    }

    impl RawRange {
        fn into_range(self, what: &str) -> Result<Range64, CostModelError> {
            match self {
                RawRange::Point(v) => Ok(Range64::point(v)),
                RawRange::Pair([lo, hi]) if lo <= hi => Ok(Range64 { lo, hi }),
                RawRange::Pair([lo, hi]) => Err(CostModelError::Config(format!(
                    "{what}: range bounds out of order ({lo} > {hi})"
                ))),
            }
        }
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct RawOverhead {
        usable: Option<f64>,
        redundancy: Option<f64>,
        system: Option<[f64; 2]>,
        deployment: Option<f64>,
        lifecycle: Option<f64>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct RawAssumptions {
        signature_multiplier: Option<u64>,
        media_price_per_tb: Option<u64>,
        multiplier_band: Option<RawRange>,
        overhead: Option<RawOverhead>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct RawProfile {
        name: String,
        node_class: Option<String>,
        node_count: RawRange,
        growth_gb_per_year: RawRange,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct RawScheme {
        name: String,
        note: Option<String>,
        public_key_bytes: RawRange,
        signature_bytes: RawRange,
        representative_tx_bytes: u64,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct RawCostConfig {
        assumptions: Option<RawAssumptions>,
        profiles: Option<Vec<RawProfile>>,
        schemes: Option<Vec<RawScheme>>,
    }

    /// Assumptions, profiles, and scheme catalog resolved from TOML over
    /// the embedded defaults.
    #[derive(Debug)]
    pub struct CostConfig {
        pub assumptions: CostAssumptions,
        pub profiles: Vec<NetworkProfile>,
        pub catalog: Vec<SignatureSchemeSpec>,
    }

    impl Default for CostConfig {
        fn default() -> Self {
            CostConfig {
                assumptions: CostAssumptions::default(),
                profiles: default_profiles(),
                catalog: default_catalog(),
            }
        }
    }

    impl CostConfig {
        /// Parses a TOML override file. A present `[[profiles]]` or
        /// `[[schemes]]` list replaces the corresponding default set
        /// entirely; `[assumptions]` keys override individually.
        pub fn from_toml(src: &str) -> Result<Self, CostModelError> {
            let raw: RawCostConfig = toml::from_str(src)
                .map_err(|e| CostModelError::Config(format!("bad TOML: {e}")))?;
            let mut cfg = CostConfig::default();
            if let Some(a) = raw.assumptions {
                if let Some(v) = a.signature_multiplier {
                    cfg.assumptions.signature_multiplier = v;
                }
                if let Some(v) = a.media_price_per_tb {
                    cfg.assumptions.media_price_per_tb = v;
                }
                if let Some(v) = a.multiplier_band {
                    cfg.assumptions.overall_multiplier_band = v.into_range("multiplier_band")?;
                }
                if let Some(o) = a.overhead {
                    let oh = &mut cfg.assumptions.overhead;
                    if let Some(v) = o.usable {
                        oh.usable = v;
                    }
                    if let Some(v) = o.redundancy {
                        oh.redundancy = v;
                    }
                    if let Some([lo, hi]) = o.system {
                        oh.system = (lo, hi);
                    }
                    if let Some(v) = o.deployment {
                        oh.deployment = v;
                    }
                    if let Some(v) = o.lifecycle {
                        oh.lifecycle = v;
                    }
                }
                cfg.assumptions.validate()?;
            }
            if let Some(profiles) = raw.profiles {
                cfg.profiles = profiles
                    .into_iter()
                    .map(|p| {
                        let profile = NetworkProfile {
                            node_count: p.node_count.into_range(&p.name)?,
                            growth_gb_per_year: p.growth_gb_per_year.into_range(&p.name)?,
                            name: p.name,
                            node_class: p.node_class.unwrap_or_else(|| "full".into()),
                        };
                        profile.validate()?;
                        Ok(profile)
                    })
                    .collect::<Result<_, CostModelError>>()?;
            }
            if let Some(schemes) = raw.schemes {
                cfg.catalog = schemes
                    .into_iter()
                    .map(|s| {
                        let spec = SignatureSchemeSpec {
                            public_key_bytes: s.public_key_bytes.into_range(&s.name)?,
                            signature_bytes: s.signature_bytes.into_range(&s.name)?,
                            name: s.name,
                            note: s.note.unwrap_or_default(),
                            representative_tx_bytes: s.representative_tx_bytes,
                        };
                        spec.validate()?;
                        Ok(spec)
                    })
                    .collect::<Result<_, CostModelError>>()?;
            }
            Ok(cfg)
        }
    }
}

pub use config::CostConfig;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legacy_tx_sizes() {
        assert_eq!(bitcoin_tx_size(1, 2).unwrap(), 226);
        assert_eq!(bitcoin_tx_size(2, 2).unwrap(), 374);
        assert_eq!(bitcoin_tx_size(1, 1).unwrap(), 192);
        assert!(bitcoin_tx_size(0, 2).is_err());
        assert!(bitcoin_tx_size(1, 0).is_err());
    }

    #[test]
    fn segwit_accounting() {
        assert_eq!(segwit_weight(100, 100).unwrap(), (400, 100));
        assert_eq!(segwit_weight(100, 200).unwrap(), (500, 125));
        assert_eq!(segwit_weight(0, 0).unwrap(), (0, 0));
        // Ceiling division shows up on non-multiple weights.
        assert_eq!(segwit_weight(1, 2).unwrap(), (5, 2));
        assert!(segwit_weight(10, 9).is_err());
        assert_eq!(MAX_BLOCK_WEIGHT, 4_000_000);
    }

    #[test]
    fn catalog_matches_published_sizes() {
        let catalog = default_catalog();
        assert_eq!(catalog.len(), 4);
        let by_name = |n: &str| catalog.iter().find(|s| s.name == n).unwrap();
        let ecdsa = by_name("ECDSA");
        assert_eq!(ecdsa.public_key_bytes, Range64::point(64));
        assert_eq!(ecdsa.signature_bytes, Range64::point(65));
        let dilithium = by_name("Dilithium");
        assert_eq!(dilithium.public_key_bytes, Range64::new(1_000, 2_500));
        assert_eq!(dilithium.signature_bytes, Range64::new(2_000, 4_500));
        let sphincs = by_name("SPHINCS+");
        assert_eq!(sphincs.public_key_bytes, Range64::point(32));
        assert_eq!(sphincs.signature_bytes, Range64::new(10_000, 30_000));
        let lamport = by_name("Lamport");
        assert_eq!(lamport.public_key_bytes, Range64::point(32_000));
        assert_eq!(lamport.signature_bytes, Range64::point(16_000));

        assert_eq!(tx_size_for_scheme(&catalog, "ECDSA").unwrap(), 200);
        assert_eq!(tx_size_for_scheme(&catalog, "Dilithium").unwrap(), 3_000);
        assert_eq!(tx_size_for_scheme(&catalog, "SPHINCS+").unwrap(), 20_000);
        assert_eq!(tx_size_for_scheme(&catalog, "Lamport").unwrap(), 16_000);
        assert_eq!(tx_size_for_scheme(&catalog, "ecdsa").unwrap(), 200);
        assert_eq!(
            tx_size_for_scheme(&catalog, "RSA"),
            Err(CostModelError::UnknownScheme("RSA".into()))
        );
    }

    #[test]
    fn storage_table_midpoints() {
        let table = aggregate_storage(&default_profiles(), &CostAssumptions::default()).unwrap();
        let row = |n: &str| table.rows.iter().find(|r| r.network == n).unwrap();

        let btc = row("Bitcoin");
        assert_eq!(btc.per_node_gb_mid, 30_000); // 30 TB
        assert_eq!(btc.total_gb_mid, 2_160_000_000); // 2.16 EB
        assert_eq!(btc.total_gb, Range64::new(1_800_000_000, 2_520_000_000));

        let eth_full = row("Ethereum (full)");
        assert_eq!(eth_full.per_node_gb_mid, 100_000); // 100 TB
        assert_eq!(eth_full.total_gb_mid, 1_200_000_000); // 1.2 EB

        let eth_arch = row("Ethereum (archive)");
        assert_eq!(eth_arch.per_node_gb_mid, 1_000_000); // 1 PB
        assert_eq!(eth_arch.total_gb_mid, 1_000_000_000); // 1 EB

        let other = row("Other UTXO");
        assert_eq!(other.per_node_gb_mid, 30_000);
        assert_eq!(other.total_gb, Range64::new(63_000_000, 90_000_000));
        assert_eq!(other.total_gb_mid, 76_500_000); // 0.0765 EB

        assert_eq!(table.subtotal_gb_mid, 4_436_500_000); // 4.4365 EB
        assert_eq!(table.subtotal_rounded_tb(), 4_500_000); // 4.5 EB
        // Subtotal equals the sum of rows, interval and midpoint alike.
        let sum_mid: u64 = table.rows.iter().map(|r| r.total_gb_mid).sum();
        assert_eq!(table.subtotal_gb_mid, sum_mid);
    }

    #[test]
    fn infrastructure_cost_headline() {
        let cost = infrastructure_cost(4.5, &CostAssumptions::default()).unwrap();
        assert_eq!(cost.storage_tb, 4_500_000);
        assert_eq!(cost.raw_media_usd, 1_350_000_000);
        assert_eq!(cost.band_usd, Range64::new(13_500_000_000, 27_000_000_000));
        assert_eq!(cost.display_band_billion_usd, Range64::new(14, 27));
        assert_eq!(cost.display_band(), "$14-27 B");

        let small = infrastructure_cost(0.001, &CostAssumptions::default()).unwrap();
        assert_eq!(small.raw_media_usd, 300_000);

        assert!(infrastructure_cost(0.0, &CostAssumptions::default()).is_err());
    }

    #[test]
    fn component_product_band() {
        let (lo, hi) = component_multiplier_product(&CostAssumptions::default());
        assert!((lo - 11.7).abs() < 1e-9, "lo = {lo}");
        assert!((hi - 14.625).abs() < 1e-9, "hi = {hi}");
        // The headline band deliberately brackets wider.
        let band = CostAssumptions::default().overall_multiplier_band;
        assert!((band.lo as f64) < lo && hi < band.hi as f64);
    }

    #[test]
    fn catchup_horizon() {
        let y50 = hardware_catchup_years(50.0, 2.0);
        let y100 = hardware_catchup_years(100.0, 2.0);
        assert_eq!(format!("{y50:.2}"), "11.29");
        assert_eq!(format!("{y100:.2}"), "13.29");
        assert!((10.0..=15.0).contains(&y50));
        assert!((10.0..=15.0).contains(&y100));
        assert_eq!(hardware_catchup_years(1.0, 2.0), 0.0);
    }

    #[test]
    fn projection_rows_are_exact() {
        let rows = fig2_projections();
        assert_eq!(rows[0].projected_deci_tb(), 600); // 1.2 TB -> 60 TB
        assert_eq!(rows[1].projected_deci_tb(), 8_000); // 15 TB -> 800 TB
        assert_eq!(node_storage_projection(7.0, 1.0), 7.0);
        assert!((node_storage_projection(1.2, 50.0) - 60.0).abs() < 1e-9);
    }

    #[test]
    fn figure_csv_goldens() {
        assert_eq!(
            render_fig1_csv(&default_catalog()).unwrap(),
            "scheme,tx_bytes\n\
             ECDSA,200\n\
             Dilithium,3000\n\
             SPHINCS+,20000\n"
        );
        assert_eq!(
            render_fig2_csv(),
            "configuration,storage_tb\n\
             Full (Current),1.2\n\
             Full (PQ),60\n\
             Archive (Current),15\n\
             Archive (PQ),800\n"
        );
        let table = aggregate_storage(&default_profiles(), &CostAssumptions::default()).unwrap();
        assert_eq!(
            render_table2_csv(&table),
            "network,ten_year_growth_tb,per_node_tb,total_eb\n\
             Bitcoin,0.6,30,2.16\n\
             Ethereum (full),2,100,1.2\n\
             Ethereum (archive),20,1000,1\n\
             Other UTXO,0.6,30,0.0765\n\
             Subtotal,,,4.4365\n"
        );
    }

    #[test]
    fn scaled_formatting() {
        assert_eq!(format_scaled(2_160_000_000, GB_PER_EB), "2.16");
        assert_eq!(format_scaled(76_500_000, GB_PER_EB), "0.0765");
        assert_eq!(format_scaled(1_000_000_000, GB_PER_EB), "1");
        assert_eq!(format_scaled(600, GB_PER_TB), "0.6");
        assert_eq!(format_scaled(12, 10), "1.2");
        assert_eq!(format_scaled(0, 10), "0");
    }

    #[test]
    fn unit_constants_round_trip() {
        assert_eq!(GB_PER_TB * TB_PER_EB, GB_PER_EB);
        let eb = 3u64;
        assert_eq!(eb * GB_PER_EB / GB_PER_TB / TB_PER_EB, eb);
    }

    #[test]
    fn cost_outputs_monotone_in_inputs() {
        let profiles = default_profiles();
        let mut last_subtotal = 0;
        for multiplier in [1, 10, 50, 100] {
            let assumptions = CostAssumptions {
                signature_multiplier: multiplier,
                ..CostAssumptions::default()
            };
            let table = aggregate_storage(&profiles, &assumptions).unwrap();
            assert!(table.subtotal_gb_mid >= last_subtotal);
            last_subtotal = table.subtotal_gb_mid;
        }
        let mut last_raw = 0;
        for price in [100, 300, 900] {
            let assumptions = CostAssumptions {
                media_price_per_tb: price,
                ..CostAssumptions::default()
            };
            let cost = infrastructure_cost(4.5, &assumptions).unwrap();
            assert!(cost.raw_media_usd >= last_raw);
            last_raw = cost.raw_media_usd;
        }
        let mut last_years = 0.0;
        for m in [1.0, 2.0, 50.0, 100.0] {
            let y = hardware_catchup_years(m, 2.0);
            assert!(y >= last_years);
            last_years = y;
        }
    }

    #[test]
    fn full_report_builds() {
        let report = build_cost_report(&default_profiles(), &CostAssumptions::default()).unwrap();
        assert_eq!(report.cost_from_rounded_subtotal.raw_media_usd, 1_350_000_000);
        assert_eq!(
            report.cost_from_model_subtotal.storage_tb,
            4_436_500 // model midpoint, unrounded
        );
        let text = report.render_text();
        assert!(text.contains("Bitcoin"));
        assert!(text.contains("4.4365"));
        assert!(text.contains("$14-27 B"));
        assert!(text.contains("11.29"));
        assert!(text.contains("unquantified"));
        // Rendering is deterministic.
        assert_eq!(text, report.render_text());
    }

    #[test]
    fn reachable_profile_is_an_alternative() {
        let mut profiles = default_profiles();
        profiles[0] = bitcoin_reachable_profile();
        let table = aggregate_storage(&profiles, &CostAssumptions::default()).unwrap();
        let btc = &table.rows[0];
        // 16,500 nodes (midpoint) at 30 TB each.
        assert_eq!(btc.total_gb_mid, 495_000_000);
        assert!(btc.total_gb_mid < 2_160_000_000);
    }

    #[test]
    fn toml_overrides() {
        let cfg = CostConfig::from_toml(
            r#"
            [assumptions]
            signature_multiplier = 100
            multiplier_band = [5, 8]

            [[profiles]]
            name = "Testnet"
            node_count = 10
            growth_gb_per_year = [1, 3]

            [[schemes]]
            name = "Toy"
            public_key_bytes = 8
            signature_bytes = [16, 32]
            representative_tx_bytes = 64
            "#,
        )
        .unwrap();
        assert_eq!(cfg.assumptions.signature_multiplier, 100);
        assert_eq!(cfg.assumptions.overall_multiplier_band, Range64::new(5, 8));
        // Untouched assumption keys keep their defaults.
        assert_eq!(cfg.assumptions.media_price_per_tb, 300);
        assert_eq!(cfg.profiles.len(), 1);
        assert_eq!(cfg.profiles[0].node_count, Range64::point(10));
        assert_eq!(cfg.profiles[0].growth_gb_per_year, Range64::new(1, 3));
        assert_eq!(cfg.catalog.len(), 1);
        assert_eq!(tx_size_for_scheme(&cfg.catalog, "Toy").unwrap(), 64);

        // Defaults pass through an empty config.
        let empty = CostConfig::from_toml("").unwrap();
        assert_eq!(empty.profiles, default_profiles());
        assert_eq!(empty.catalog, default_catalog());

        for (src, needle) in [
            ("nonsense = true", "bad TOML"),
            (
                "[[profiles]]\nname = \"X\"\nnode_count = [9, 3]\ngrowth_gb_per_year = 1",
                "out of order",
            ),
            (
                "[[profiles]]\nname = \"X\"\nnode_count = 0\ngrowth_gb_per_year = 1",
                "zero node count",
            ),
            ("[assumptions]\nsignature_multiplier = 0", "positive"),
            (
                "[assumptions]\n[assumptions.overhead]\nusable = 0.5",
                "at least 1",
            ),
        ] {
            let err = CostConfig::from_toml(src).expect_err(src);
            assert!(
                err.to_string().contains(needle),
                "{src:?}: {err} missing {needle:?}"
            );
        }
    }
}
