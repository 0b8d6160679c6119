use toeplitz_precond::corpus;
use toeplitz_precond::estimate::{fourier_expansion, Grid, SymbolPart};

fn dump(id: &str, n: usize, grid: Grid, part: SymbolPart) {
    let f = corpus::symbol(id).unwrap();
    let diags = f.fourier_coefficients(n - 1).unwrap();
    let e = fourier_expansion(&diags, grid).unwrap();
    let vals: Vec<f64> = e
        .values()
        .iter()
        .map(|v| match part {
            SymbolPart::Real => v.re,
            SymbolPart::Imag => v.im,
        })
        .collect();
    let absvals: Vec<f64> = vals.iter().map(|v| v.abs()).collect();
    let maxv = absvals.iter().fold(0.0f64, |a, &b| a.max(b));
    let h = match grid {
        Grid::Band => std::f64::consts::TAU / (n as f64 + 1.0),
        Grid::Circulant => std::f64::consts::TAU / n as f64,
    };
    let tau = h * maxv;
    let len = vals.len();
    let fold = |x: f64| {
        let mut y = x.rem_euclid(std::f64::consts::TAU);
        if y > std::f64::consts::PI {
            y = std::f64::consts::TAU - y;
        }
        y
    };
    println!("== {id} n={n} {grid:?} {part:?}: maxv={maxv:.4} h={h:.6} tau={tau:.6}");
    let mut count = 0;
    for j in 0..len {
        let (prev, next) = match grid {
            Grid::Band => {
                if j == 0 || j == len - 1 {
                    continue;
                }
                (absvals[j - 1], absvals[j + 1])
            }
            Grid::Circulant => (absvals[(j + len - 1) % len], absvals[(j + 1) % len]),
        };
        if absvals[j] < prev && absvals[j] < next && absvals[j] <= tau {
            let x = e.nodes()[j];
            println!(
                "  cand j={j} x={x:.6} fold={:.6} ({:.2}h) |F|={:.3e} F={:.3e}",
                fold(x),
                fold(x) / h,
                absvals[j],
                vals[j]
            );
            count += 1;
            if count > 60 {
                println!("  ...");
                break;
            }
        }
    }
}

#[test]
fn dump_candidates() {
    dump("f2", 2048, Grid::Circulant, SymbolPart::Imag);
    dump("f2", 1024, Grid::Circulant, SymbolPart::Imag);
    dump("f14", 2048, Grid::Circulant, SymbolPart::Real);
    dump("f14", 1024, Grid::Circulant, SymbolPart::Imag);
    dump("f9", 1024, Grid::Circulant, SymbolPart::Imag);
}
