//! Writes the sample JSON instances used by the command-line tool into a
//! directory (default `instances/`).

use std::path::PathBuf;

use orelab::io::InstanceJson;
use orelab::linear::int;
use orelab::{corpus, GeneratorFamily, LinearEndomap, Subspace, Vector};

fn write(dir: &std::path::Path, name: &str, inst: &InstanceJson) -> orelab::Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(inst).expect("serializable") + "\n")?;
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> orelab::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "instances".into()));
    std::fs::create_dir_all(&dir)?;

    for g in [2, 3] {
        let (a, d) = corpus::grassmann(g);
        let fam = GeneratorFamily::of_derivations(&a, &[d.map().clone()])?;
        let v = Subspace::full(a.dim());
        let inst = InstanceJson::from_parts(&a, &fam, Some(&v), Some(1), Some(d.map()));
        write(&dir, &format!("grassmann_e{g}.json"), &inst)?;
    }

    for (n, name) in [(2, "ut2_inner.json"), (3, "ut3_inner.json")] {
        let a = corpus::upper_triangular(n);
        let u = Vector::unit(a.dim(), corpus::upper_triangular_index(n, 0, 1));
        let ad = LinearEndomap::inner_derivation(&a, &u);
        let fam = GeneratorFamily::of_derivations(&a, &[ad])?;
        write(&dir, name, &InstanceJson::from_parts(&a, &fam, None, Some(1), None))?;
    }

    let qxq = corpus::product_field(2);
    let fam = GeneratorFamily::of_derivations(&qxq, &[LinearEndomap::zero(2)])?;
    write(&dir, "qxq_zero.json", &InstanceJson::from_parts(&qxq, &fam, None, Some(1), Some(&LinearEndomap::zero(2))))?;

    // d on E2 with one entry nudged: fails the Leibniz rule
    let (a, d) = corpus::grassmann(2);
    let mut inst = InstanceJson::from_parts(&a, &GeneratorFamily::of_derivations(&a, &[d.map().clone()])?, None, None, None);
    inst.generators[0].delta.matrix[2][2] = int(1).to_string();
    write(&dir, "broken_leibniz.json", &inst)?;
    Ok(())
}
