use serde::Serialize;

use crate::exactlin::IntMatrix;
use crate::groups::GroupFamily;
use crate::spectra::{classify_family, SpectraError, SpectrumDescriptor};

/// One row of a conclusion table, with a representative group and the
/// classifier's answer for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub section: &'static str,
    pub case: &'static str,
    pub representative: String,
    /// The table entry; two descriptors for an "either ... or" entry.
    pub expected: Vec<SpectrumDescriptor>,
    pub computed: SpectrumDescriptor,
    pub trace: Vec<String>,
    pub matches: bool,
}

use SpectrumDescriptor::{Multiples, RInfinity};

fn four() -> SpectrumDescriptor {
    SpectrumDescriptor::finite(&[4])
}

fn eight() -> SpectrumDescriptor {
    SpectrumDescriptor::finite(&[8])
}

fn m2(rows: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(&rows)
}

fn m3(rows: [[i64; 3]; 3]) -> IntMatrix {
    IntMatrix::from_rows(&rows)
}

fn semi(a: IntMatrix) -> (String, GroupFamily) {
    (format!("A = {}", a), GroupFamily::zn_semidirect_z(a))
}

fn ext(a: [[i64; 2]; 2], n0: [i64; 2]) -> (String, GroupFamily) {
    let a = m2(a);
    let label = format!("A = {}, n0 = {},{}", a, n0[0], n0[1]);
    (label, GroupFamily::z2_minus_i_ext(a, n0.iter().map(|&x| x.into()).collect()))
}

fn hn(n: u64, a: [[i64; 2]; 2], k: i64, l: i64) -> (String, GroupFamily) {
    let a = m2(a);
    (format!("n = {}, A = {}, k = {}, l = {}", n, a, k, l), GroupFamily::HnSemidirectZ { n, a, k, l })
}

type Spec = (&'static str, &'static str, (String, GroupFamily), Vec<SpectrumDescriptor>);

fn specs() -> Vec<Spec> {
    let either4 = vec![RInfinity, four()];
    let either8 = vec![RInfinity, eight()];
    vec![
        ("4", "eigenvalues -1,-1; A = -I", semi(m2([[-1, 0], [0, -1]])), vec![Multiples { c: 2 }]),
        ("4", "eigenvalues -1,-1; A != -I", semi(m2([[-1, 1], [0, -1]])), vec![RInfinity]),
        ("4", "eigenvalues 1,-1", semi(m2([[1, 0], [0, -1]])), vec![RInfinity]),
        ("4", "real, not +-1; det A = 1", semi(m2([[2, 3], [3, 5]])), either4.clone()),
        ("4", "real, not +-1; det A = 1", semi(m2([[5, 2], [2, 1]])), either4.clone()),
        ("4", "real, not +-1; det A = 1", semi(m2([[2, 1], [1, 1]])), either4),
        ("4", "real, not +-1; det A = -1", semi(m2([[1, 1], [1, 0]])), vec![RInfinity]),
        ("4", "non-real", semi(m2([[0, -1], [1, 0]])), vec![RInfinity]),
        ("4", "non-real", semi(m2([[1, 1], [-1, 0]])), vec![RInfinity]),
        ("5.1", "1 not an eigenvalue; A = -I", semi(m3([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])), vec![Multiples { c: 2 }]),
        ("5.1", "1 not an eigenvalue; A != -I", semi(m3([[-1, 1, 0], [0, -1, 0], [0, 0, -1]])), vec![RInfinity]),
        ("5.1", "1 not an eigenvalue; A != -I", semi(m3([[0, 0, 1], [1, 0, 0], [0, 1, 3]])), vec![RInfinity]),
        ("5.1", "[[1,*,*],[0,1,*],[0,0,-1]]", semi(m3([[1, 0, 0], [0, 1, 0], [0, 0, -1]])), vec![RInfinity]),
        ("5.1", "[[1,*,*],[0,1,*],[0,0,-1]]", semi(m3([[1, 2, 1], [0, 1, 3], [0, 0, -1]])), vec![RInfinity]),
        ("5.1", "[[1,*,*],[0,-1,n],[0,0,-1]]; n != 0", semi(m3([[1, 0, 0], [0, -1, 1], [0, 0, -1]])), vec![RInfinity]),
        ("5.1", "[[1,0,d],[0,-1,0],[0,0,-1]]; d = 0", semi(m3([[1, 0, 0], [0, -1, 0], [0, 0, -1]])), vec![Multiples { c: 2 }]),
        ("5.1", "[[1,0,d],[0,-1,0],[0,0,-1]]; d = 1", semi(m3([[1, 0, 1], [0, -1, 0], [0, 0, -1]])), vec![Multiples { c: 4 }]),
        ("5.1", "[[1,*],[0,A']], A' real, not +-1; det A' = 1", semi(m3([[1, 0, 0], [0, 2, 3], [0, 3, 5]])), either8.clone()),
        ("5.1", "[[1,*],[0,A']], A' real, not +-1; det A' = 1", semi(m3([[1, 0, 1], [0, 5, 2], [0, 2, 1]])), either8.clone()),
        ("5.1", "[[1,*],[0,A']], A' real, not +-1; det A' = -1", semi(m3([[1, 0, 0], [0, 1, 1], [0, 1, 0]])), vec![RInfinity]),
        ("5.1", "[[1,*],[0,A']]; A'^4 = I or A'^6 = I", semi(m3([[1, 0, 0], [0, 0, -1], [0, 1, 0]])), vec![RInfinity]),
        ("5.1", "[[1,*],[0,A']]; A'^4 = I or A'^6 = I", semi(m3([[1, 0, 0], [0, 1, -1], [0, 1, 0]])), vec![RInfinity]),
        ("5.1", "[[1,*],[0,A']]; A'^3 = I", semi(m3([[1, 0, 0], [0, 0, -1], [0, 1, -1]])), vec![Multiples { c: 6 }]),
        ("5.1", "[[1,*],[0,A']]; A'^3 = I", semi(m3([[1, 0, 1], [0, 0, -1], [0, 1, -1]])), vec![Multiples { c: 6 }]),
        ("5.2", "eigenvalues 1,1 or -1,-1", ext([[1, 1], [0, 1]], [0, 0]), vec![RInfinity]),
        ("5.2", "eigenvalues 1,1 or -1,-1", ext([[-1, 2], [0, -1]], [1, 0]), vec![RInfinity]),
        ("5.2", "eigenvalues l, -1/l, l real", ext([[1, 1], [1, 0]], [0, 0]), vec![RInfinity]),
        ("5.2", "eigenvalues l, 1/l, l real, not +-1", ext([[2, 3], [3, 5]], [0, 0]), either8.clone()),
        ("5.2", "eigenvalues l, 1/l, l real, not +-1", ext([[5, 2], [2, 1]], [1, 0]), either8.clone()),
        ("5.2", "eigenvalues l, 1/l, l real, not +-1", ext([[5, 2], [2, 1]], [1, 1]), either8),
        ("5.3", "A != -I, 1 not an eigenvalue", hn(1, [[2, 1], [1, 1]], 0, 0), vec![RInfinity]),
        ("5.3", "A != -I, 1 not an eigenvalue", hn(2, [[0, -1], [1, 0]], 0, 0), vec![RInfinity]),
        ("5.3", "A = -I; (k and l even) or (n odd)", hn(2, [[-1, 0], [0, -1]], 0, 2), vec![Multiples { c: 4 }]),
        ("5.3", "A = -I; (k and l even) or (n odd)", hn(3, [[-1, 0], [0, -1]], 1, 0), vec![Multiples { c: 4 }]),
        ("5.3", "A = -I; (k or l odd) and (n even)", hn(2, [[-1, 0], [0, -1]], 1, 0), vec![Multiples { c: 8 }]),
        ("5.3", "A = -I; (k or l odd) and (n even)", hn(4, [[-1, 0], [0, -1]], 1, 1), vec![Multiples { c: 8 }]),
    ]
}

fn consistent(expected: &[SpectrumDescriptor], computed: &SpectrumDescriptor) -> bool {
    match computed {
        SpectrumDescriptor::Undecided { candidates, .. } => candidates.iter().all(|c| expected.contains(c)),
        c => expected.contains(c),
    }
}

/// The rows of the tables, optionally restricted to one section.
pub fn table_rows(section: Option<&str>, bound: u64) -> Result<Vec<TableRow>, SpectraError> {
    if let Some(s) = section {
        if !["4", "5.1", "5.2", "5.3"].contains(&s) {
            return Err(SpectraError::Precondition(format!("unknown table {:?}; expected 4, 5.1, 5.2 or 5.3", s)));
        }
    }
    let mut rows = Vec::new();
    for (sec, case, (representative, family), expected) in specs() {
        if section.is_some_and(|s| s != sec) {
            continue;
        }
        let c = classify_family(&family, bound)?;
        rows.push(TableRow {
            section: sec,
            case,
            representative,
            matches: consistent(&expected, &c.spectrum),
            expected,
            computed: c.spectrum,
            trace: c.trace,
        });
    }
    Ok(rows)
}

pub(crate) fn render_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let mut current = "";
    for r in rows {
        if r.section != current {
            current = r.section;
            out.push_str(&format!("== table {} ==\n", current));
        }
        let expected: Vec<String> = r.expected.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!(
            "{:<48} {:<34} expected {:<16} computed {:<12} {}\n",
            r.case,
            r.representative,
            expected.join(" or "),
            r.computed.to_string(),
            if r.matches { "ok" } else { "MISMATCH" }
        ));
    }
    out
}
