use std::fmt::Display;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::{run_checks, CheckSpec, Compute, VerificationReport};
use crate::chow::{
    blowup_intersection_table, canonical_classes, del_pezzo_ring, euler_numbers, hrr_chi,
    koszul_chi_b, tautological_bundle_m, tautological_ring, BlowupDivisor, EulerNumbers,
};
use crate::conicbundle::{dimension_ladder, linear_analog_system, standard_nodes, LineInFiber};
use crate::exactalg::{int, rat, Rational};
use crate::moduli::{
    chi_of_y_chain, degree_nine_lemma, lambda_degree_from_family, pencil_curve_numbers,
    psi_degree_via_z, pullback_delta0, prym_pullback_lambda, slope_bound, solve_double_line_count,
    solve_double_line_count_reduced, SlopeBound, SlopeVariant, DELTA0_DOUBLE_PRIME, DELTA0_PRIME,
    DELTA0_RAM, GENUS, LAMBDA,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Chow,
    Counts,
    Slope,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Chow => "chow",
            Suite::Counts => "counts",
            Suite::Slope => "slope",
        }
    }
}

fn compute<F, E>(f: F) -> Compute
where
    F: Fn(u64) -> Result<Rational, E> + 'static,
    E: Display,
{
    Box::new(move |seed| f(seed).map_err(|e| e.to_string()))
}

fn check(id: &'static str, anchor: &'static str, expected: Rational, f: Compute) -> CheckSpec {
    CheckSpec { id, anchor, expected, compute: f }
}

fn table_entry(exps: [u32; 4]) -> Compute {
    compute(move |_| {
        let t = blowup_intersection_table()?;
        Ok::<_, crate::chow::ChowError>(t.get(exps).cloned().unwrap_or_else(|| int(0)))
    })
}

fn euler(f: fn(&EulerNumbers) -> &Rational) -> Compute {
    compute(move |_| euler_numbers().map(|e| f(&e).clone()))
}

fn canonical_p(f: fn(&BlowupDivisor) -> &Rational) -> Compute {
    compute(move |_| canonical_classes().map(|k| f(&k.k_p).clone()))
}

fn chow_checks() -> Vec<CheckSpec> {
    vec![
        check("chow.blowup.n4", "N^4 = -4", int(-4), table_entry([0, 0, 0, 4])),
        check("chow.blowup.n3h", "N^3 H = 4", int(4), table_entry([1, 0, 0, 3])),
        check("chow.blowup.n3h1", "N^3 H1 = 0", int(0), table_entry([0, 1, 0, 3])),
        check("chow.blowup.n3h2", "N^3 H2 = 0", int(0), table_entry([0, 0, 1, 3])),
        check("chow.blowup.n2h2", "N^2 H^2 = 0", int(0), table_entry([2, 0, 0, 2])),
        check("chow.blowup.n2h1h1", "N^2 H1^2 = 0", int(0), table_entry([0, 2, 0, 2])),
        check("chow.blowup.n2h2h2", "N^2 H2^2 = 0", int(0), table_entry([0, 0, 2, 2])),
        check(
            "chow.deg_h.blowup",
            "deg h = 6 H1^2 H2^2 + N^4 = 2",
            int(2),
            compute(|_| {
                let t = blowup_intersection_table().map_err(|e| e.to_string())?;
                let get = |e| t.get(e).cloned().unwrap_or_else(|| int(0));
                let direct = int(6) * get([0, 2, 2, 0]) + get([0, 0, 0, 4]);
                let full = t.power4(&BlowupDivisor::from_ints(0, 1, 1, -1));
                if direct != full {
                    return Err(format!("partial sum {direct} differs from (H1+H2-N)^4 = {full}"));
                }
                Ok(direct)
            }),
        ),
        check(
            "chow.deg_h.segre",
            "deg h = c1(M)^2 - c2(M) = 5 - 3",
            int(2),
            compute(|_| {
                let s = del_pezzo_ring();
                let m = tautological_bundle_m(&s)?;
                Ok::<_, crate::chow::ChowError>(m.c1.pow(2).integrate() - m.c2)
            }),
        ),
        check(
            "chow.deg_h.zeta4",
            "deg h = zeta^4 on P(M)",
            int(2),
            compute(|_| tautological_ring()?.generator("zeta").map(|z| z.pow(4).integrate())),
        ),
        check("chow.k_p.h1", "K_P = -3H1 - 3H2 + 3N (H1)", int(-3), canonical_p(|k| &k.h1)),
        check("chow.k_p.h2", "K_P = -3H1 - 3H2 + 3N (H2)", int(-3), canonical_p(|k| &k.h2)),
        check("chow.k_p.n", "K_P = -3H1 - 3H2 + 3N (N)", int(3), canonical_p(|k| &k.n)),
        check("chow.k_b_squared", "K_B^2 = 8", int(8), compute(|_| canonical_classes().map(|k| k.k_b_squared))),
        check("chow.chi_b", "chi(O_B) = 6 by Riemann-Roch and Koszul", int(6), compute(|_| koszul_chi_b())),
        check("chow.c2_b", "12 chi(O_B) = K_B^2 + c2(B), c2(B) = 64", int(64), euler(|e| &e.e_b)),
        check("chow.hrr.d1", "h0(O_P(1)) = 5", int(5), compute(|_| hrr_chi(1))),
        check("chow.hrr.d2", "h0(O_P(2)) = 16", int(16), compute(|_| hrr_chi(2))),
        check("chow.euler.s", "e(S) = 7", int(7), euler(|e| &e.e_s)),
        check("chow.euler.genus_c", "g(C) = 6 by adjunction", int(6), euler(|e| &e.genus_c)),
        check("chow.euler.c", "e(C) = -10", int(-10), euler(|e| &e.e_c)),
        check("chow.euler.q", "e(Q) = 4", int(4), euler(|e| &e.e_q)),
        check("chow.euler.q0", "e(Q0) = 5", int(5), euler(|e| &e.e_q0)),
        check("chow.euler.p", "e(P) = 21", int(21), euler(|e| &e.e_p)),
    ]
}

fn seeded_lines(seed: u64) -> Vec<LineInFiber> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..5).map(|_| LineInFiber::random(&mut rng)).collect()
}

fn ladder_entry(k: usize) -> Compute {
    compute(move |seed| {
        dimension_ladder(&standard_nodes(), &seeded_lines(seed)).map(|d| int(d[k] as i64))
    })
}

fn sweeping(i: usize) -> Compute {
    compute(move |_| pencil_curve_numbers().map(|p| p.sweeping.number(i).clone()))
}

fn counts_checks() -> Vec<CheckSpec> {
    vec![
        check("counts.delta", "precisely 77 singular conic bundles: e(P) + e(B) - 2 e(Q)", int(77), euler(|e| &e.delta)),
        check("counts.omega_y.h1", "omega_Y = O_Y(3h1 + h2) (h1)", int(3), compute(|_| chi_of_y_chain().map(|y| y.omega_y[0].clone()))),
        check("counts.omega_y.h2", "omega_Y = O_Y(3h1 + h2) (h2)", int(1), compute(|_| chi_of_y_chain().map(|y| y.omega_y[1].clone()))),
        check("counts.h0_omega_y", "h0(Y, omega_Y) = 20", int(20), compute(|_| chi_of_y_chain().map(|y| y.h0_ambient))),
        check("counts.chi_family", "chi(O) = 13 for the family surface", int(13), compute(|_| chi_of_y_chain().map(|y| y.chi))),
        check(
            "counts.lambda",
            "e.lambda = chi + g - 1 = 18",
            int(18),
            compute(|_| chi_of_y_chain().map(|y| lambda_degree_from_family(&y.chi, GENUS))),
        ),
        check(
            "counts.double_lines",
            "47 e.lambda - 6 e.delta0' - 12 e.delta0ram = 0 gives 32",
            int(32),
            compute(|_| {
                let p = pencil_curve_numbers()?;
                solve_double_line_count_reduced(p.single.number(LAMBDA), p.single.number(DELTA0_PRIME))
            }),
        ),
        check(
            "counts.double_lines.unreduced",
            "94 lambda - 12 (delta0' + delta0'' + 2 delta0ram) gives 32",
            int(32),
            compute(|_| {
                let p = pencil_curve_numbers()?;
                let s = &p.single;
                solve_double_line_count(s.number(LAMBDA), s.number(DELTA0_PRIME), s.number(DELTA0_DOUBLE_PRIME))
            }),
        ),
        check("counts.degree_nine", "(2h1 + h2 + h3)^3 (3h3) h1^2 = 9", int(9), compute(|_| degree_nine_lemma())),
        check("counts.omega_z.h1", "omega_Z = O_Z(3h1 + 3h3) (h1)", int(3), compute(|_| psi_degree_via_z(&int(0), &int(3)).map(|p| p.omega_z[0].clone()))),
        check("counts.omega_z.h2", "omega_Z = O_Z(3h1 + 3h3) (h2)", int(0), compute(|_| psi_degree_via_z(&int(0), &int(3)).map(|p| p.omega_z[1].clone()))),
        check("counts.omega_z.h3", "omega_Z = O_Z(3h1 + 3h3) (h3)", int(3), compute(|_| psi_degree_via_z(&int(0), &int(3)).map(|p| p.omega_z[2].clone()))),
        check("counts.psi", "i(P1).psi_j = 9", int(9), compute(|_| psi_degree_via_z(&int(0), &int(3)).map(|p| p.psi))),
        check("counts.sweep.lambda", "m(P1).lambda = 9 * 6", int(54), sweeping(LAMBDA)),
        check("counts.sweep.delta0p", "m(P1).delta0' = 3 * 77", int(231), sweeping(DELTA0_PRIME)),
        check("counts.sweep.delta0pp", "m(P1).delta0'' = 0", int(0), sweeping(DELTA0_DOUBLE_PRIME)),
        check("counts.sweep.delta0ram", "m(P1).delta0ram = 3 * 32", int(96), sweeping(DELTA0_RAM)),
        check("counts.ladder.complete", "dim |O(2,2)| = 36", int(36), ladder_entry(0)),
        check("counts.ladder.nodal", "P^15 of forms nodal at the four points", int(16), ladder_entry(1)),
        check("counts.ladder.five_lines", "five lines single out a unique conic bundle", int(1), ladder_entry(6)),
        check(
            "counts.ladder.linear_analog",
            "h0(S, M) = 5",
            int(5),
            compute(|_| linear_analog_system(&standard_nodes()).map(|s| int(s.dim() as i64))),
        ),
    ]
}

fn bound(variant: SlopeVariant, f: fn(SlopeBound) -> Rational) -> Compute {
    compute(move |_| slope_bound(variant).map(f))
}

fn slope_checks() -> Vec<CheckSpec> {
    vec![
        check(
            "slope.delta0_pairing",
            "e.pi*(delta0) = 77 + 0 + 2 * 32 = 141",
            int(141),
            compute(|_| pencil_curve_numbers().and_then(|p| pullback_delta0().pair(&p.single))),
        ),
        check(
            "slope.lambda1_pairing",
            "m(P1).(lambda - delta0ram / 4) = 6 * 9 - 3 * 32 / 4 = 30",
            int(30),
            compute(|_| pencil_curve_numbers().and_then(|p| prym_pullback_lambda().pair(&p.sweeping))),
        ),
        check("slope.full.gamma_lambda1", "gamma.lambda1 = 30", int(30), bound(SlopeVariant::Full, |b| b.gamma_lambda1)),
        check("slope.full.gamma_d6", "gamma.[D6] = -8 * 9 + 3 * 77 = 159", int(159), bound(SlopeVariant::Full, |b| b.gamma_boundary)),
        check("slope.full.bound", "s(A6) >= 53/10", rat(53, 10), bound(SlopeVariant::Full, |b| b.slope)),
        check("slope.u4.gamma_lambda1", "gamma4.lambda1 = 30", int(30), bound(SlopeVariant::U4, |b| b.gamma_lambda1)),
        check("slope.u4.gamma_d6", "gamma4.[D6] = -4 * 9 + 3 * 77 = 195", int(195), bound(SlopeVariant::U4, |b| b.gamma_boundary)),
        check("slope.u4.bound", "s(E) >= 13/2", rat(13, 2), bound(SlopeVariant::U4, |b| b.slope)),
    ]
}

pub fn run_suite(suite: Suite, seed: u64) -> VerificationReport {
    let specs = match suite {
        Suite::Chow => chow_checks(),
        Suite::Counts => counts_checks(),
        Suite::Slope => slope_checks(),
        Suite::All => [chow_checks(), counts_checks(), slope_checks()].into_iter().flatten().collect(),
    };
    run_checks(suite.name(), seed, specs)
}
