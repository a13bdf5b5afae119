use std::collections::HashSet;
use std::fs;
use std::path::Path;

use hsym_core::heisenberg::{
    a_generator, commutation_phase, d_matrix, normalizer_generators, r_matrix, s_matrix, symplectic_image,
    weyl_op, DenseUnitary, MonomialUnitary,
};
use hsym_core::io::{family_from_json, family_to_json, read_matrix, to_json, write_listing};
use hsym_core::mub::{generate_mubs, verify_family};
use hsym_core::sympgroup::{
    brute_force_sp, delta_members, g_ij, group_closure, is_symplectic, is_symplectic_congruence, orbit as
    column_orbit, sl2_embed, standard_generators, SL2_SHEAR, SL2_TURN,
};
use hsym_core::{BlockMatrix, ColumnPair, DimensionProfile, Error, Unitary, WeylIndex};

use crate::{Method, Status};

fn fail(err: Error) -> Status {
    eprintln!("hsym: {err}");
    Status::of(&err)
}

fn read_text(path: &Path) -> Result<String, Status> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("hsym: cannot read {}: {e}", path.display());
        Status::Usage
    })
}

fn write_text(path: &Path, text: &str) -> Result<(), Status> {
    fs::write(path, text).map_err(|e| {
        eprintln!("hsym: cannot write {}: {e}", path.display());
        Status::Usage
    })
}

fn closure_sorted(dims: &DimensionProfile, cap: usize) -> Result<Vec<BlockMatrix>, Error> {
    let mut group: Vec<BlockMatrix> = group_closure(dims, &standard_generators(dims), cap)?.into_iter().collect();
    group.sort();
    Ok(group)
}

pub fn sp_order(dims: &DimensionProfile, method: Method, emit: Option<&Path>, cap: usize) -> Status {
    let group = match method {
        Method::Closure => closure_sorted(dims, cap),
        Method::Brute => brute_force_sp(dims),
        Method::Both => match (closure_sorted(dims, cap), brute_force_sp(dims)) {
            (Ok(a), Ok(b)) => {
                println!("closure {}", a.len());
                println!("brute {}", b.len());
                if a != b {
                    println!("DISAGREE");
                    return Status::Fail;
                }
                Ok(a)
            }
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    };
    let group = match group {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    println!("{}", group.len());
    if let Some(path) = emit {
        if let Err(s) = write_text(path, &write_listing(dims, &group)) {
            return s;
        }
    }
    Status::Pass
}

pub fn sp_check(dims: &DimensionProfile, file: &Path) -> Status {
    let text = match read_text(file) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let h = match read_matrix(&text) {
        Ok(h) => h,
        Err(e) => return fail(e),
    };
    if h.profile() != dims {
        eprintln!("hsym: file has dims {:?}, expected {:?}", h.profile().dims(), dims.dims());
        return Status::Usage;
    }
    let (a, b) = (is_symplectic(&h), is_symplectic_congruence(&h));
    println!("adjoint test: {}", if a { "pass" } else { "fail" });
    println!("congruence test: {}", if b { "pass" } else { "fail" });
    if a && b {
        println!("SYMPLECTIC");
        Status::Pass
    } else {
        if a != b {
            println!("tests disagree");
        }
        println!("NOT SYMPLECTIC");
        Status::Fail
    }
}

pub fn orbit(dims: &DimensionProfile, cap: usize) -> Status {
    let orb = match column_orbit(&ColumnPair::standard(dims), &standard_generators(dims), cap) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let delta = match delta_members(dims) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let orb: HashSet<ColumnPair> = orb.into_iter().collect();
    let delta: HashSet<ColumnPair> = delta.into_iter().collect();
    println!("orbit {}", orb.len());
    println!("delta {}", delta.len());
    if orb == delta {
        println!("TRANSITIVE");
        Status::Pass
    } else {
        println!("NOT TRANSITIVE");
        Status::Fail
    }
}

struct Checklist {
    failed: bool,
}

impl Checklist {
    fn item(&mut self, kind: &str, name: &str, outcome: Result<String, String>) {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                self.failed = true;
                ("FAIL", d)
            }
        };
        println!("{tag}  {kind:<7}  {name}: {detail}");
    }

    fn skip(&self, name: &str, why: &str) {
        println!("SKIP  {:<7}  {name}: {why}", "-");
    }
}

fn pauli_pairs(dims: &DimensionProfile) -> Result<String, String> {
    for i in 0..dims.k() {
        let (p, q) = (a_generator(dims, 2 * i).unwrap(), a_generator(dims, 2 * i + 1).unwrap());
        let (pq, qp) = (p.mul(&q).unwrap(), q.mul(&p).unwrap());
        let want = dims.phase_order() / dims.dim(i);
        if pq.ratio(&qp) != Some(want) {
            return Err(format!("subsystem {}", i + 1));
        }
    }
    Ok(format!("{} subsystems", dims.k()))
}

fn weyl_commutation(all: &[WeylIndex]) -> Result<String, String> {
    let ops: Vec<MonomialUnitary> = all.iter().map(weyl_op).collect();
    for (a, x) in all.iter().zip(&ops) {
        for (b, y) in all.iter().zip(&ops) {
            let e = commutation_phase(a, b).map_err(|e| e.to_string())?;
            if x.mul(y).unwrap().ratio(&y.mul(x).unwrap()) != Some(e) {
                return Err(format!("{:?} vs {:?}", a.as_slice(), b.as_slice()));
            }
        }
    }
    Ok(format!("{} pairs", all.len() * all.len()))
}

fn coupling_conjugates(dims: &DimensionProfile) -> Result<String, String> {
    let mut count = 0;
    for i in 0..dims.k() {
        for j in i + 1..dims.k() {
            let g = dims.gcd(i, j);
            let r = r_matrix(dims, i, j).unwrap();
            let r_inv = r.inverse();
            let a = |t| a_generator(dims, t).unwrap();
            let lhs = r.mul(&a(2 * i)).unwrap().mul(&r_inv).unwrap();
            let rhs = a(2 * i).mul(&a(2 * j + 1).pow(-((dims.dim(j) / g) as i64))).unwrap();
            if lhs != rhs {
                return Err(format!("R{}{} on P{}", i + 1, j + 1, i + 1));
            }
            let lhs = r.mul(&a(2 * j)).unwrap().mul(&r_inv).unwrap();
            let rhs = a(2 * i + 1).pow(-((dims.dim(i) / g) as i64)).mul(&a(2 * j)).unwrap();
            if lhs != rhs {
                return Err(format!("R{}{} on P{}", i + 1, j + 1, j + 1));
            }
            count += 1;
        }
    }
    Ok(format!("{count} couplings"))
}

fn coupling_images(dims: &DimensionProfile) -> Result<String, String> {
    let mut count = 0;
    for i in 0..dims.k() {
        for j in i + 1..dims.k() {
            let img = symplectic_image(&r_matrix(dims, i, j).unwrap().into()).map_err(|e| e.to_string())?;
            if img != g_ij(dims, i, j, -1).unwrap() {
                return Err(format!("R{}{} -> {}", i + 1, j + 1, img.to_line()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} couplings"))
}

fn local_images(dims: &DimensionProfile, which: &str) -> Result<String, String> {
    let mut bad = Vec::new();
    for i in 0..dims.k() {
        let n = dims.dim(i);
        let (local, block): (Unitary, _) = match which {
            "D" => (d_matrix(n).into(), SL2_SHEAR),
            _ => (s_matrix(n).into(), SL2_TURN),
        };
        let embedded = embed_local(dims, i, &local);
        let img = symplectic_image(&embedded).map_err(|e| e.to_string())?;
        let want = sl2_embed(dims, i, block).unwrap();
        if img != want {
            let b = img.block(i, i);
            bad.push(format!("{which}{} -> [[{}, {}], [{}, {}]]", i + 1, b[0][0], b[0][1], b[1][0], b[1][1]));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} subsystems", dims.k()))
    } else {
        Err(bad.join(", "))
    }
}

fn embed_local(dims: &DimensionProfile, i: usize, local: &Unitary) -> Unitary {
    match local {
        Unitary::Monomial(m) => MonomialUnitary::embed(dims, i, m).unwrap().into(),
        Unitary::Dense(d) => DenseUnitary::embed(dims, i, d).unwrap().into(),
    }
}

fn kernel(all: &[WeylIndex]) -> Result<String, String> {
    for a in all {
        let img = symplectic_image(&weyl_op(a).into()).map_err(|e| e.to_string())?;
        if !img.is_identity() {
            return Err(format!("{:?}", a.as_slice()));
        }
    }
    Ok(format!("{} Weyl operators", all.len()))
}

fn generator_images(dims: &DimensionProfile) -> Result<String, String> {
    let gens = normalizer_generators(dims);
    for g in &gens {
        let img = symplectic_image(&g.op).map_err(|e| format!("{}: {e}", g.name))?;
        if !is_symplectic(&img) {
            return Err(g.name.clone());
        }
    }
    Ok(format!("{} generators", gens.len()))
}

pub fn heisenberg_verify(dims: &DimensionProfile, cap: usize) -> Status {
    let mut list = Checklist { failed: false };
    let weyl_count = dims.hilbert_dim() * dims.hilbert_dim();
    let all = (weyl_count <= cap).then(|| WeylIndex::all(dims));
    list.item("exact", "P Q = w Q P per subsystem", pauli_pairs(dims));
    match &all {
        Some(all) => list.item("exact", "Weyl commutation phases", weyl_commutation(all)),
        None => list.skip("Weyl commutation phases", &format!("{weyl_count} operators exceed cap {cap}")),
    }
    list.item("exact", "R conjugation of P and Q", coupling_conjugates(dims));
    list.item("exact", "R images are G(-1)", coupling_images(dims));
    list.item("exact", "D images are [[1, 1], [0, 1]]", local_images(dims, "D"));
    list.item("numeric", "S images are [[0, -1], [1, 0]]", local_images(dims, "S"));
    match &all {
        Some(all) => list.item("exact", "Weyl operators in kernel", kernel(all)),
        None => list.skip("Weyl operators in kernel", &format!("{weyl_count} operators exceed cap {cap}")),
    }
    list.item("numeric", "generator images symplectic", generator_images(dims));
    if list.failed {
        Status::Fail
    } else {
        Status::Pass
    }
}

fn json_error(err: &Error) -> String {
    to_json(&serde_json::json!({ "pass": false, "error": err.to_string() }))
}

pub fn mub_generate(p: u64, n: u32, out: Option<&Path>) -> Status {
    let family = match generate_mubs(p, n) {
        Ok(f) => f,
        Err(e) => {
            print!("{}", json_error(&e));
            return Status::of(&e);
        }
    };
    let text = family_to_json(&family);
    match out {
        Some(path) => {
            if let Err(s) = write_text(path, &text) {
                return s;
            }
            eprintln!("wrote {} bases of dimension {} to {}", family.bases.len(), family.dim(), path.display());
        }
        None => print!("{text}"),
    }
    Status::Pass
}

pub fn mub_verify(file: &Path, tol: f64) -> Status {
    let text = match read_text(file) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let family = match family_from_json(&text) {
        Ok(f) => f,
        Err(e) => {
            print!("{}", json_error(&e));
            return Status::of(&e);
        }
    };
    let report = verify_family(&family, tol);
    print!("{}", to_json(&report));
    if report.pass {
        Status::Pass
    } else {
        Status::Fail
    }
}
