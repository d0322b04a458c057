use isobasis::family::{is_in_family, FamilyExport};
use isobasis::phimap::{phi, phi_inverse, tilde_v, PhiExport, PhiTable};
use isobasis::zbasis::{basis_matrix, CertificateExport};
use isobasis::{enumerate_family, Subspace, Vector};

#[test]
fn family_export_round_trips() {
    let fam = enumerate_family(3).unwrap();
    let json = serde_json::to_string(&fam.to_export()).unwrap();
    let back: FamilyExport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.count, 35);
    for (rec, x) in back.subspaces.iter().zip(fam.members()) {
        assert_eq!(&Subspace::from_record(3, rec).unwrap(), x);
        assert_eq!(rec.alpha.len(), x.dim());
    }
}

#[test]
fn phi_export_and_inverse() {
    let fam = enumerate_family(3).unwrap();
    let export = PhiTable::new(&fam).to_export(tilde_v(3).unwrap().len());
    let json = serde_json::to_value(&export).unwrap();
    let back: PhiExport = serde_json::from_value(json).unwrap();
    assert_eq!(back.tilde_v_size, 35);
    for pair in &back.pairs {
        let v: Vector = pair.phi.parse().unwrap();
        let x = phi_inverse(&v, 3).unwrap();
        assert_eq!(phi(&x), v);
        assert!(is_in_family(&x, 3).unwrap());
    }
    assert!(phi_inverse(&"110000".parse().unwrap(), 3).is_err());
}

#[test]
fn certificate_export_is_exact() {
    let cert = basis_matrix(4).unwrap();
    let export: CertificateExport =
        serde_json::from_str(&serde_json::to_string(&cert.to_export()).unwrap()).unwrap();
    assert_eq!(export.size, 126);
    assert!(export.determinant == "1" || export.determinant == "-1");
    assert!(export.matrix.iter().all(|r| r.len() == 126));
    // first row is the zero subspace: only the zero vector
    assert_eq!(export.matrix[0].matches('1').count(), 1);
    let csv = cert.to_csv();
    assert_eq!(csv.lines().count(), 127);
}
