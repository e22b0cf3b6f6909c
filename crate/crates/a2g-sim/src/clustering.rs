//! Ground-device population: Poisson point process placement on a disc,
//! residual-energy cluster-head election, nearest-head member assignment
//! within D2D range, and uncovered-node accounting.
//!
//! Generation is fully deterministic per seed. The draw order is part of
//! the contract: one Poisson count first, then per device a radius uniform,
//! an angle uniform, and an energy uniform, in that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::fmt_sig_fixed;
use crate::geometry::{distance_2d, GroundPosition};
use crate::rng::SplitMix64;

/// Role of a ground device after clustering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", content = "head_id", rename_all = "lowercase")]
pub enum Role {
    Head,
    Member(usize),
    Uncovered,
}

/// One ground user device.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Device {
    pub id: usize,
    pub position: GroundPosition,
    /// Remaining battery fraction in [0, 1].
    pub residual_energy: f64,
    pub role: Role,
}

/// A cluster head together with the member ids it serves, both ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub head_id: usize,
    pub member_ids: Vec<usize>,
}

/// Placement and election parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringParams {
    /// Radius of the disc (centered at the origin) devices are placed on, m.
    pub region_radius_m: f64,
    /// Device density, devices per square meter.
    pub density_per_m2: f64,
    /// Residual-energy fraction required to become a cluster head. The
    /// comparison is >=, so a threshold of 1.0 still elects a device whose
    /// energy is exactly 1.0.
    pub energy_threshold: f64,
    /// Maximum member-to-head distance, m.
    pub d2d_range_m: f64,
    /// Generator seed.
    pub seed: u64,
    /// Hard cap on the generated population.
    pub max_devices: usize,
}

impl Default for ClusteringParams {
    fn default() -> Self {
        Self {
            region_radius_m: 500.0,
            density_per_m2: 1e-3,
            energy_threshold: 0.8,
            d2d_range_m: 50.0,
            seed: 0,
            max_devices: 1_000_000,
        }
    }
}

impl ClusteringParams {
    pub fn validate(&self) -> Result<()> {
        if self.region_radius_m <= 0.0 || self.region_radius_m.is_nan() {
            return Err(Error::Config(format!(
                "region_radius_m must be > 0, got {}",
                self.region_radius_m
            )));
        }
        if self.density_per_m2 < 0.0 || self.density_per_m2.is_nan() {
            return Err(Error::Config(format!(
                "density_per_m2 must be >= 0, got {}",
                self.density_per_m2
            )));
        }
        if !(0.0..=1.0).contains(&self.energy_threshold) {
            return Err(Error::Config(format!(
                "energy_threshold must be in [0, 1], got {}",
                self.energy_threshold
            )));
        }
        if self.d2d_range_m <= 0.0 || self.d2d_range_m.is_nan() {
            return Err(Error::Config(format!(
                "d2d_range_m must be > 0, got {}",
                self.d2d_range_m
            )));
        }
        Ok(())
    }

    /// Expected device count, density * pi * R^2.
    pub fn mean_count(&self) -> f64 {
        self.density_per_m2 * std::f64::consts::PI * self.region_radius_m * self.region_radius_m
    }
}

/// Draws a device population from a homogeneous Poisson point process:
/// N ~ Poisson(density * pi * R^2), then N positions i.i.d. uniform on the
/// disc and residual energies i.i.d. uniform on [0, 1). All roles start
/// uncovered.
pub fn generate_devices_ppp(params: &ClusteringParams) -> Result<Vec<Device>> {
    params.validate()?;
    let mut rng = SplitMix64::new(params.seed);
    let count = rng.poisson(params.mean_count());
    if count > params.max_devices as u64 {
        return Err(Error::Capacity(format!(
            "poisson draw produced {count} devices, cap is {}",
            params.max_devices
        )));
    }
    let mut devices = Vec::with_capacity(count as usize);
    for id in 0..count as usize {
        let radius = params.region_radius_m * rng.next_f64().sqrt();
        let angle = 2.0 * std::f64::consts::PI * rng.next_f64();
        let energy = rng.next_f64();
        devices.push(Device {
            id,
            position: GroundPosition::new(radius * angle.cos(), radius * angle.sin()),
            residual_energy: energy,
            role: Role::Uncovered,
        });
    }
    Ok(devices)
}

/// Ids of the devices whose residual energy reaches the threshold,
/// ascending. An empty election is legal here; the scenario layer decides
/// whether it is fatal.
pub fn elect_cluster_heads(devices: &[Device], energy_threshold: f64) -> Vec<usize> {
    devices
        .iter()
        .filter(|d| d.residual_energy >= energy_threshold)
        .map(|d| d.id)
        .collect()
}

/// Attaches every non-head device to its nearest elected head within
/// `d2d_range_m` (ties broken by the lowest head id); devices with no head
/// in range come back as uncovered. Heads, members, and uncovered always
/// partition the device set.
pub fn assign_members(
    devices: &[Device],
    head_ids: &[usize],
    d2d_range_m: f64,
) -> (Vec<Cluster>, Vec<usize>) {
    let mut clusters: Vec<Cluster> = head_ids
        .iter()
        .map(|&head_id| Cluster {
            head_id,
            member_ids: Vec::new(),
        })
        .collect();
    clusters.sort_by_key(|c| c.head_id);
    let index_of_head: std::collections::HashMap<usize, usize> = clusters
        .iter()
        .enumerate()
        .map(|(i, c)| (c.head_id, i))
        .collect();

    let mut uncovered = Vec::new();
    for device in devices {
        if index_of_head.contains_key(&device.id) {
            continue;
        }
        let mut best: Option<(f64, usize)> = None;
        for cluster in &clusters {
            let head = &devices[cluster.head_id];
            let d = distance_2d(device.position, head.position);
            if d > d2d_range_m {
                continue;
            }
            // strict < keeps the lowest head id on ties
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, cluster.head_id));
            }
        }
        match best {
            Some((_, head_id)) => clusters[index_of_head[&head_id]].member_ids.push(device.id),
            None => uncovered.push(device.id),
        }
    }
    (clusters, uncovered)
}

/// Stamps the roles computed by [`assign_members`] back onto the devices.
pub fn apply_roles(devices: &mut [Device], clusters: &[Cluster], uncovered: &[usize]) {
    for cluster in clusters {
        devices[cluster.head_id].role = Role::Head;
        for &member in &cluster.member_ids {
            devices[member].role = Role::Member(cluster.head_id);
        }
    }
    for &id in uncovered {
        devices[id].role = Role::Uncovered;
    }
}

/// Summary counters for one clustering run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringReport {
    pub heads: usize,
    pub members: usize,
    pub uncovered: usize,
    /// Members per cluster (the head itself is not counted).
    pub mean_cluster_size: f64,
    pub max_member_to_head_m: f64,
    /// (heads + members) / total devices; 1.0 for an empty population.
    pub coverage_fraction: f64,
}

pub fn clustering_report(
    clusters: &[Cluster],
    uncovered: &[usize],
    devices: &[Device],
) -> ClusteringReport {
    let heads = clusters.len();
    let members: usize = clusters.iter().map(|c| c.member_ids.len()).sum();
    let mut max_member_to_head_m = 0.0f64;
    for cluster in clusters {
        let head = &devices[cluster.head_id];
        for &member in &cluster.member_ids {
            let d = distance_2d(devices[member].position, head.position);
            max_member_to_head_m = max_member_to_head_m.max(d);
        }
    }
    let coverage_fraction = if devices.is_empty() {
        1.0
    } else {
        (heads + members) as f64 / devices.len() as f64
    };
    ClusteringReport {
        heads,
        members,
        uncovered: uncovered.len(),
        mean_cluster_size: if heads == 0 {
            0.0
        } else {
            members as f64 / heads as f64
        },
        max_member_to_head_m,
        coverage_fraction,
    }
}

/// Device list serialization: `id,x_m,y_m,energy,role,head_id` with fixed
/// six-significant-digit decimals and `\n` line endings. `head_id` stays
/// empty for heads and uncovered devices.
pub fn devices_to_csv(devices: &[Device]) -> String {
    let mut out = String::from("id,x_m,y_m,energy,role,head_id\n");
    for d in devices {
        let (role, head_id) = match d.role {
            Role::Head => ("head", String::new()),
            Role::Member(h) => ("member", h.to_string()),
            Role::Uncovered => ("uncovered", String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            d.id,
            fmt_sig_fixed(d.position.x),
            fmt_sig_fixed(d.position.y),
            fmt_sig_fixed(d.residual_energy),
            role,
            head_id
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn device(id: usize, x: f64, y: f64, energy: f64) -> Device {
        Device {
            id,
            position: GroundPosition::new(x, y),
            residual_energy: energy,
            role: Role::Uncovered,
        }
    }

    #[test]
    fn zero_density_yields_no_devices() {
        let params = ClusteringParams {
            density_per_m2: 0.0,
            ..ClusteringParams::default()
        };
        assert!(generate_devices_ppp(&params).unwrap().is_empty());
    }

    #[test]
    fn generation_is_deterministic() {
        let params = ClusteringParams {
            seed: 42,
            ..ClusteringParams::default()
        };
        let a = generate_devices_ppp(&params).unwrap();
        let b = generate_devices_ppp(&params).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        let other = ClusteringParams { seed: 43, ..params };
        assert_ne!(a, generate_devices_ppp(&other).unwrap());
    }

    #[test]
    fn generated_devices_satisfy_invariants() {
        let params = ClusteringParams {
            seed: 7,
            ..ClusteringParams::default()
        };
        let devices = generate_devices_ppp(&params).unwrap();
        for (i, d) in devices.iter().enumerate() {
            assert_eq!(d.id, i);
            assert!((0.0..=1.0).contains(&d.residual_energy));
            let r = (d.position.x * d.position.x + d.position.y * d.position.y).sqrt();
            assert!(r <= params.region_radius_m);
            assert_eq!(d.role, Role::Uncovered);
        }
    }

    #[test]
    fn capacity_cap_is_enforced() {
        let params = ClusteringParams {
            max_devices: 10,
            ..ClusteringParams::default()
        };
        assert!(matches!(
            generate_devices_ppp(&params),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn election_examples() {
        let devices = vec![
            device(0, 0.0, 0.0, 0.9),
            device(1, 1.0, 0.0, 0.3),
            device(2, 2.0, 0.0, 0.8),
        ];
        assert_eq!(elect_cluster_heads(&devices, 0.5), vec![0, 2]);
        assert_eq!(elect_cluster_heads(&devices, 0.0), vec![0, 1, 2]);
        assert_eq!(elect_cluster_heads(&devices, 1.0), Vec::<usize>::new());
        // >= semantics: energy exactly at the threshold elects
        let exact = vec![device(0, 0.0, 0.0, 1.0)];
        assert_eq!(elect_cluster_heads(&exact, 1.0), vec![0]);
    }

    #[test]
    fn assignment_examples() {
        // nearest of two in-range heads
        let devices = vec![
            device(0, 0.0, 0.0, 0.1),
            device(1, 10.0, 0.0, 0.9),
            device(2, 50.0, 0.0, 0.9),
        ];
        let (clusters, uncovered) = assign_members(&devices, &[1, 2], 30.0);
        assert_eq!(clusters[0].member_ids, vec![0]);
        assert!(clusters[1].member_ids.is_empty());
        assert!(uncovered.is_empty());

        // out of range
        let devices = vec![device(0, 100.0, 100.0, 0.1), device(1, 100.0, 220.0, 0.9)];
        let (clusters, uncovered) = assign_members(&devices, &[1], 30.0);
        assert!(clusters[0].member_ids.is_empty());
        assert_eq!(uncovered, vec![0]);

        // equidistant tie goes to the lowest head id
        let devices = vec![
            device(0, 0.0, 0.0, 0.1),
            device(1, 0.0, 0.0, 0.1),
            device(2, 20.0, 0.0, 0.9),
            device(3, 0.0, 0.0, 0.1),
            device(4, -20.0, 0.0, 0.9),
        ];
        let (clusters, _) = assign_members(&devices, &[4, 2], 30.0);
        assert_eq!(clusters[0].head_id, 2);
        assert_eq!(clusters[0].member_ids, vec![0, 1, 3]);
        assert!(clusters[1].member_ids.is_empty());
    }

    #[test]
    fn report_examples() {
        // two clusters with 2 and 4 members, 2 uncovered, 10 devices total
        let mut devices: Vec<Device> = (0..10).map(|i| device(i, i as f64, 0.0, 0.5)).collect();
        let clusters = vec![
            Cluster {
                head_id: 0,
                member_ids: vec![1, 2],
            },
            Cluster {
                head_id: 3,
                member_ids: vec![4, 5, 6, 7],
            },
        ];
        let uncovered = vec![8, 9];
        apply_roles(&mut devices, &clusters, &uncovered);
        let report = clustering_report(&clusters, &uncovered, &devices);
        assert_eq!(report.heads, 2);
        assert_eq!(report.members, 6);
        assert_eq!(report.uncovered, 2);
        assert!((report.coverage_fraction - 0.8).abs() < 1e-12);
        assert!((report.mean_cluster_size - 3.0).abs() < 1e-12);

        // empty population: vacuous full coverage by convention
        let report = clustering_report(&[], &[], &[]);
        assert_eq!(report.heads, 0);
        assert_eq!(report.coverage_fraction, 1.0);
        assert_eq!(report.mean_cluster_size, 0.0);

        // lone head
        let devices = vec![device(0, 0.0, 0.0, 0.9)];
        let clusters = vec![Cluster {
            head_id: 0,
            member_ids: vec![],
        }];
        let report = clustering_report(&clusters, &[], &devices);
        assert_eq!(report.mean_cluster_size, 0.0);
        assert_eq!(report.coverage_fraction, 1.0);
    }

    #[test]
    fn partition_and_range_invariants_over_seeds() {
        for seed in 0..50u64 {
            let params = ClusteringParams {
                region_radius_m: 200.0,
                density_per_m2: 4e-4,
                seed,
                ..ClusteringParams::default()
            };
            let mut devices = generate_devices_ppp(&params).unwrap();
            let heads = elect_cluster_heads(&devices, params.energy_threshold);
            let (clusters, uncovered) = assign_members(&devices, &heads, params.d2d_range_m);
            apply_roles(&mut devices, &clusters, &uncovered);

            let mut seen = vec![0u8; devices.len()];
            for c in &clusters {
                seen[c.head_id] += 1;
                assert!(devices[c.head_id].residual_energy >= params.energy_threshold);
                for &m in &c.member_ids {
                    seen[m] += 1;
                    let d = distance_2d(devices[m].position, devices[c.head_id].position);
                    assert!(d <= params.d2d_range_m);
                }
            }
            for &u in &uncovered {
                seen[u] += 1;
            }
            assert!(
                seen.iter().all(|&c| c == 1),
                "partition violated for seed {seed}"
            );
        }
    }

    #[test]
    fn assignment_matches_brute_force_oracle() {
        for seed in 0..100u64 {
            // small populations, mean about 8 devices
            let params = ClusteringParams {
                region_radius_m: 50.0,
                density_per_m2: 1e-3,
                d2d_range_m: 30.0,
                seed,
                ..ClusteringParams::default()
            };
            let devices = generate_devices_ppp(&params).unwrap();
            let heads = elect_cluster_heads(&devices, params.energy_threshold);
            let (clusters, uncovered) = assign_members(&devices, &heads, params.d2d_range_m);

            // oracle: exhaustive nearest-feasible-head scan per device
            for d in &devices {
                if heads.contains(&d.id) {
                    continue;
                }
                let mut best: Option<(f64, usize)> = None;
                for &h in &heads {
                    let dist = distance_2d(d.position, devices[h].position);
                    if dist <= params.d2d_range_m
                        && best.is_none_or(|(bd, bh)| dist < bd || (dist == bd && h < bh))
                    {
                        best = Some((dist, h));
                    }
                }
                match best {
                    Some((_, h)) => {
                        let cluster = clusters.iter().find(|c| c.head_id == h).unwrap();
                        assert!(
                            cluster.member_ids.contains(&d.id),
                            "seed {seed}: device {} misplaced",
                            d.id
                        );
                    }
                    None => assert!(
                        uncovered.contains(&d.id),
                        "seed {seed}: device {} should be uncovered",
                        d.id
                    ),
                }
            }
        }
    }

    #[test]
    fn csv_format() {
        let mut devices = vec![
            device(0, 12.345678, -1.0, 0.95),
            device(1, 0.0, 3.5, 0.25),
            device(2, 100.0, 100.0, 0.1),
        ];
        let clusters = vec![Cluster {
            head_id: 0,
            member_ids: vec![1],
        }];
        let uncovered = vec![2];
        apply_roles(&mut devices, &clusters, &uncovered);
        let csv = devices_to_csv(&devices);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "id,x_m,y_m,energy,role,head_id");
        assert_eq!(lines[1], "0,12.3457,-1.00000,0.950000,head,");
        assert_eq!(lines[2], "1,0.00000,3.50000,0.250000,member,0");
        assert_eq!(lines[3], "2,100.000,100.000,0.100000,uncovered,");
        assert!(csv.ends_with('\n'));
    }
}
