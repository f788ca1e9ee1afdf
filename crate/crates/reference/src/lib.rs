//! Slow, direct implementations used as test oracles.
//!
//! Everything here works on plain nested arrays (`frames[t][j] = [x, y, z]`)
//! and carries its own joint tables, so it shares no code with the main
//! crate. Loops are written out the long way on purpose; speed does not
//! matter.

pub type P = [f64; 3];
pub type Frames = Vec<Vec<P>>;

// SMPL-24 indices, spelled out again.
pub const PELVIS: usize = 0;
pub const L_HIP: usize = 1;
pub const R_HIP: usize = 2;
pub const L_KNEE: usize = 4;
pub const R_KNEE: usize = 5;
pub const L_ANKLE: usize = 7;
pub const R_ANKLE: usize = 8;
pub const L_FOOT: usize = 10;
pub const R_FOOT: usize = 11;
pub const NECK: usize = 12;
pub const HEAD: usize = 15;
pub const L_SHOULDER: usize = 16;
pub const R_SHOULDER: usize = 17;
pub const L_ELBOW: usize = 18;
pub const R_ELBOW: usize = 19;
pub const L_WRIST: usize = 20;
pub const R_WRIST: usize = 21;

pub const PARENTS: [i32; 24] = [-1, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 9, 9, 12, 13, 14, 16, 17, 18, 19, 20, 21];
pub const UPPER: [usize; 8] = [13, 14, 16, 17, 18, 19, 20, 21];
pub const LOWER: [usize; 8] = [1, 2, 4, 5, 7, 8, 10, 11];
pub const LIMBS: [usize; 12] = [4, 5, 7, 8, 10, 11, 16, 17, 18, 19, 20, 21];
pub const PAIRS: [(usize, usize); 6] = [(7, 8), (4, 5), (1, 2), (16, 17), (18, 19), (20, 21)];
pub const FEET: [usize; 4] = [L_ANKLE, L_FOOT, R_ANKLE, R_FOOT];

pub struct Weights {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub beta: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub d4: f64,
    pub lam5: f64,
    pub d5: f64,
    pub eps5: f64,
    pub bins: usize,
    pub window: usize,
    pub order: usize,
    pub contact_v: f64,
    pub contact_h: f64,
}

pub const DEFAULT_WEIGHTS: Weights = Weights {
    a1: 1.5,
    a2: 0.05,
    a3: 15.0,
    beta: 0.005,
    g1: 0.3,
    g2: 1.0,
    g3: 0.5,
    d4: 0.01,
    lam5: 0.5,
    d5: 0.01,
    eps5: 1e-6,
    bins: 10,
    window: 9,
    order: 3,
    contact_v: 0.15,
    contact_h: 0.05,
};

fn sub(a: P, b: P) -> P {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn len(a: P) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let mut s = 0.0;
    for x in xs {
        s += x;
    }
    s / xs.len() as f64
}

fn pop_var(xs: &[f64]) -> f64 {
    let m = mean(xs);
    let mut s = 0.0;
    for x in xs {
        s += (x - m) * (x - m);
    }
    s / xs.len() as f64
}

// ---------------------------------------------------------------------------
// Savitzky-Golay by explicit least squares

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    x
}

/// Fit a degree-`order` polynomial to `ys` at abscissae `xs` and evaluate it
/// at `at`.
pub fn polyfit_eval(xs: &[f64], ys: &[f64], order: usize, at: f64) -> f64 {
    let m = order + 1;
    let mut ata = vec![vec![0.0; m]; m];
    let mut aty = vec![0.0; m];
    for i in 0..xs.len() {
        for r in 0..m {
            aty[r] += xs[i].powi(r as i32) * ys[i];
            for c in 0..m {
                ata[r][c] += xs[i].powi((r + c) as i32);
            }
        }
    }
    let coef = solve(ata, aty);
    let mut v = 0.0;
    for (k, c) in coef.iter().enumerate() {
        v += c * at.powi(k as i32);
    }
    v
}

/// SG smoothing: centred window inside, first/last full window at the
/// edges, window shrunk to the largest odd length that fits, input returned
/// untouched when that is not larger than the order.
pub fn savgol(ys: &[f64], window: usize, order: usize) -> Vec<f64> {
    let n = ys.len();
    let mut w = window.min(n);
    if w % 2 == 0 {
        w = w.saturating_sub(1);
    }
    if w <= order {
        return ys.to_vec();
    }
    let h = w / 2;
    let mut out = vec![0.0; n];
    for t in 0..n {
        let start = if t < h {
            0
        } else if t + h >= n {
            n - w
        } else {
            t - h
        };
        let c = start as f64 + h as f64;
        let xs: Vec<f64> = (start..start + w).map(|i| i as f64 - c).collect();
        out[t] = polyfit_eval(&xs, &ys[start..start + w], order, t as f64 - c);
    }
    out
}

// ---------------------------------------------------------------------------
// Derivatives

pub struct Deriv {
    pub vel: Vec<Vec<P>>,
    pub fvel: Vec<Vec<P>>,
    pub acc: Vec<Vec<P>>,
}

pub fn derivatives(frames: &Frames, fps: f64, window: usize, order: usize) -> Deriv {
    let n = frames.len();
    let j_count = frames[0].len();
    let mut vel = vec![vec![[0.0; 3]; j_count]; n];
    for t in 0..n {
        let a = if t + 1 < n { t } else { t - 1 };
        for j in 0..j_count {
            for k in 0..3 {
                vel[t][j][k] = (frames[a + 1][j][k] - frames[a][j][k]) * fps;
            }
        }
    }
    let mut fvel = vec![vec![[0.0; 3]; j_count]; n];
    for j in 0..j_count {
        for k in 0..3 {
            let series: Vec<f64> = (0..n).map(|t| vel[t][j][k]).collect();
            let s = savgol(&series, window, order);
            for t in 0..n {
                fvel[t][j][k] = s[t];
            }
        }
    }
    let mut acc = vec![vec![[0.0; 3]; j_count]; n];
    if n >= 3 {
        for t in 0..n {
            let c = t.clamp(1, n - 2);
            for j in 0..j_count {
                for k in 0..3 {
                    acc[t][j][k] = (fvel[c + 1][j][k] - 2.0 * fvel[c][j][k] + fvel[c - 1][j][k]) * fps;
                }
            }
        }
    }
    Deriv { vel, fvel, acc }
}

// ---------------------------------------------------------------------------
// Facing

fn wrap(a: f64) -> f64 {
    let tau = 2.0 * std::f64::consts::PI;
    let mut w = a % tau;
    if w < 0.0 {
        w += tau;
    }
    if w > std::f64::consts::PI {
        w -= tau;
    }
    w
}

/// Yaw per frame from the hip line, carrying the last valid value across
/// frames whose hip line is vertical.
pub fn yaw(frames: &Frames) -> Vec<f64> {
    let mut out = Vec::new();
    let mut last = 0.0;
    for f in frames {
        let hx = f[L_HIP][0] - f[R_HIP][0];
        let hz = f[L_HIP][2] - f[R_HIP][2];
        if (hx * hx + hz * hz).sqrt() >= 1e-9 {
            last = wrap((-hz).atan2(hx));
        }
        out.push(last);
    }
    out
}

// ---------------------------------------------------------------------------
// Complexity scores

pub fn entropy(values: &[f64], bins: usize) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut lo = values[0];
    let mut hi = values[0];
    for &v in values {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    if hi <= lo {
        return 0.0;
    }
    let mut counts = vec![0.0; bins];
    for &v in values {
        let mut k = ((v - lo) / (hi - lo) * bins as f64).floor() as usize;
        if k >= bins {
            k = bins - 1;
        }
        counts[k] += 1.0;
    }
    let mut h = 0.0;
    for c in counts {
        if c > 0.0 {
            let p = c / values.len() as f64;
            h -= p * p.ln();
        }
    }
    h
}

pub fn estimate_contacts(frames: &Frames, fps: f64, v: f64, h: f64) -> Vec<[u8; 4]> {
    let n = frames.len();
    let mut ground = f64::INFINITY;
    for f in frames {
        for &j in &FEET {
            ground = ground.min(f[j][1]);
        }
    }
    let mut out = Vec::new();
    for t in 0..n {
        let a = if t + 1 < n { t } else { t - 1 };
        let mut row = [0u8; 4];
        for (k, &j) in FEET.iter().enumerate() {
            let speed = len(sub(frames[a + 1][j], frames[a][j])) * fps;
            if speed < v && frames[t][j][1] - ground < h {
                row[k] = 1;
            }
        }
        out.push(row);
    }
    out
}

fn speed(d: &Deriv, t: usize, j: usize) -> f64 {
    len(d.vel[t][j])
}

pub fn c1(frames: &Frames, fps: f64, contacts: Option<&[[u8; 4]]>, w: &Weights) -> f64 {
    let n = frames.len();
    let d = derivatives(frames, fps, w.window, w.order);
    let mut sum = Vec::new();
    let mut pooled = Vec::new();
    for t in 0..n {
        sum.push(speed(&d, t, R_FOOT) + speed(&d, t, L_FOOT));
    }
    for t in 0..n {
        pooled.push(speed(&d, t, R_FOOT));
    }
    for t in 0..n {
        pooled.push(speed(&d, t, L_FOOT));
    }
    let mut range: f64 = 0.0;
    for &j in &[R_FOOT, L_FOOT] {
        let xs: Vec<f64> = frames.iter().map(|f| f[j][0]).collect();
        let zs: Vec<f64> = frames.iter().map(|f| f[j][2]).collect();
        let dx = xs.iter().cloned().fold(f64::MIN, f64::max) - xs.iter().cloned().fold(f64::MAX, f64::min);
        let dz = zs.iter().cloned().fold(f64::MIN, f64::max) - zs.iter().cloned().fold(f64::MAX, f64::min);
        range = range.max((dx * dx + dz * dz).sqrt());
    }
    let est;
    let c = match contacts {
        Some(c) => c,
        None => {
            est = estimate_contacts(frames, fps, w.contact_v, w.contact_h);
            &est
        }
    };
    let mut transitions = 0;
    for t in 1..n {
        if c[t] != c[t - 1] {
            transitions += 1;
        }
    }
    mean(&sum) + w.a1 * entropy(&pooled, w.bins) + w.a2 * range + w.a3 * transitions as f64 / n as f64
}

pub fn c2(frames: &Frames, fps: f64, w: &Weights) -> f64 {
    let n = frames.len();
    let d = derivatives(frames, fps, w.window, w.order);
    let mut per_frame = vec![0.0; n];
    for &j in &LIMBS {
        let s: Vec<f64> = (0..n).map(|t| speed(&d, t, j)).collect();
        let sd = pop_var(&s).sqrt();
        if sd < 1e-9 {
            continue;
        }
        for t in 0..n {
            per_frame[t] += s[t] / sd;
        }
    }
    let mut acc = Vec::new();
    for t in 0..n {
        for &j in &LIMBS {
            acc.push(len(d.acc[t][j]));
        }
    }
    acc.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = acc.len();
    let median = if m % 2 == 1 { acc[m / 2] } else { 0.5 * (acc[m / 2 - 1] + acc[m / 2]) };
    mean(&per_frame) + w.beta * median
}

pub fn c3(frames: &Frames, w: &Weights) -> f64 {
    let pi = std::f64::consts::PI;
    let y = yaw(frames);
    let n = y.len();
    let mut unwrapped = vec![y[0]];
    for t in 1..n {
        let prev = unwrapped[t - 1];
        unwrapped.push(prev + wrap(y[t] - y[t - 1]));
    }
    let mut turn = (unwrapped[n - 1] - unwrapped[0]).abs();
    while turn >= 2.0 * pi {
        turn -= 2.0 * pi;
    }
    if 2.0 * pi - turn < 1e-9 {
        turn = 0.0;
    }
    let net = turn / pi;
    let s = savgol(&unwrapped, w.window, w.order);
    let mut v = Vec::new();
    for t in 1..n {
        v.push(s[t] - s[t - 1]);
    }
    let mut a = Vec::new();
    for t in 1..v.len() {
        a.push(v[t] - v[t - 1]);
    }
    let va: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    let aa: Vec<f64> = a.iter().map(|x| x.abs()).collect();
    w.g1 * net + w.g2 * mean(&va) + w.g3 * mean(&aa)
}

pub fn c4(frames: &Frames, fps: f64, w: &Weights) -> f64 {
    let n = frames.len();
    let d = derivatives(frames, fps, w.window, w.order);
    let mut up = Vec::new();
    let mut lo = Vec::new();
    let mut diff = Vec::new();
    for t in 0..n {
        let u = mean(&UPPER.iter().map(|&j| speed(&d, t, j)).collect::<Vec<_>>());
        let l = mean(&LOWER.iter().map(|&j| speed(&d, t, j)).collect::<Vec<_>>());
        up.push(u);
        lo.push(l);
        diff.push(u - l);
    }
    if mean(&up).min(mean(&lo)) > w.d4 {
        pop_var(&diff)
    } else {
        0.0
    }
}

fn rot_y(p: P, a: f64) -> P {
    [a.cos() * p[0] + a.sin() * p[2], p[1], -a.sin() * p[0] + a.cos() * p[2]]
}

pub fn c5(frames: &Frames, fps: f64, w: &Weights) -> f64 {
    let n = frames.len();
    let d = derivatives(frames, fps, w.window, w.order);
    let y = yaw(frames);
    let mut raw = [0.0; 6];
    for (k, &(l, r)) in PAIRS.iter().enumerate() {
        let mut m = 0.0;
        for t in 0..n {
            m += 0.5 * (len(d.fvel[t][l]) + len(d.fvel[t][r]));
        }
        raw[k] = 1.0 / (m / n as f64 + w.eps5);
    }
    let total: f64 = raw.iter().sum();
    let mut a = Vec::new();
    for t in 0..n {
        let pel = frames[t][PELVIS];
        let mut s = 0.0;
        for (k, &(l, r)) in PAIRS.iter().enumerate() {
            let dv = (speed(&d, t, l) - speed(&d, t, r)).abs();
            let pl = rot_y(sub(frames[t][l], pel), -y[t]);
            let pr = rot_y(sub(frames[t][r], pel), -y[t]);
            let dp = len(sub(pl, [-pr[0], pr[1], pr[2]]));
            s += raw[k] / total * (dv + 0.5 * dp);
        }
        a.push(s);
    }
    let (mut vl, mut vr) = (0.0, 0.0);
    for t in 0..n {
        for &(l, r) in &PAIRS {
            vl += len(d.fvel[t][l]);
            vr += len(d.fvel[t][r]);
        }
    }
    let pen = if vl.min(vr) / (vl.max(vr) + w.eps5) < w.d5 { 1.0 + w.lam5 } else { 1.0 };
    mean(&a) * pen
}

// ---------------------------------------------------------------------------
// Trends

/// `(joint, start, end, direction)`
pub type Trend = (usize, usize, usize, [i32; 3]);

pub fn axis_trends(frames: &Frames, joint: usize, axis: usize, eps: f64) -> Vec<Trend> {
    let mut sig = Vec::new();
    for t in 0..frames.len() - 1 {
        let d = frames[t + 1][joint][axis] - frames[t][joint][axis];
        sig.push(if d >= eps {
            1
        } else if d <= -eps {
            -1
        } else {
            0
        });
    }
    let mut out = Vec::new();
    let mut t = 0;
    while t < sig.len() {
        if sig[t] == 0 {
            t += 1;
            continue;
        }
        let mut e = t;
        while e + 1 < sig.len() && sig[e + 1] == sig[t] {
            e += 1;
        }
        let mut v = [0; 3];
        v[axis] = sig[t];
        out.push((joint, t, e + 1, v));
        t = e + 1;
    }
    out
}

fn ratio(a: &Trend, b: &Trend) -> f64 {
    let inter = (a.2.min(b.2) as i64 - a.1.max(b.1) as i64).max(0) as f64;
    let m = (a.2 - a.1).min(b.2 - b.1);
    if m == 0 {
        0.0
    } else {
        inter / m as f64
    }
}

/// Merge by repeated all-pairs passes until nothing qualifies; drop
/// cancelled directions; sort.
pub fn merge_trends(trends: &[Trend], alpha: f64) -> Vec<Trend> {
    let mut cur: Vec<Trend> = trends.to_vec();
    loop {
        let n = cur.len();
        let mut label: Vec<usize> = (0..n).collect();
        let mut changed = false;
        for i in 0..n {
            for k in 0..n {
                if i != k && cur[i].0 == cur[k].0 && ratio(&cur[i], &cur[k]) >= alpha && label[i] != label[k] {
                    let (keep, drop) = (label[i].min(label[k]), label[i].max(label[k]));
                    for l in label.iter_mut() {
                        if *l == drop {
                            *l = keep;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        let mut next: Vec<Trend> = Vec::new();
        for g in 0..n {
            let members: Vec<&Trend> = (0..n).filter(|&i| label[i] == g).map(|i| &cur[i]).collect();
            if members.is_empty() {
                continue;
            }
            let mut m = *members[0];
            for t in &members[1..] {
                m.1 = m.1.min(t.1);
                m.2 = m.2.max(t.2);
                for a in 0..3 {
                    m.3[a] += t.3[a];
                }
            }
            next.push(m);
        }
        cur = next;
    }
    let mut out: Vec<Trend> = cur.into_iter().filter(|t| t.3 != [0, 0, 0]).collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Evaluation

pub fn kinetic(frames: &Frames, fps: f64) -> Vec<f64> {
    let d = derivatives(frames, fps, DEFAULT_WEIGHTS.window, DEFAULT_WEIGHTS.order);
    let n = frames.len() as f64;
    let mut out = vec![0.0; 48];
    for j in 0..24 {
        for t in 0..frames.len() {
            out[j] += len(d.vel[t][j]) / n;
            out[24 + j] += len(d.acc[t][j]) / n;
        }
    }
    out
}

pub fn geometric(frames: &Frames) -> Vec<f64> {
    let pairs = [
        (L_WRIST, R_WRIST),
        (L_ANKLE, R_ANKLE),
        (L_ELBOW, R_ELBOW),
        (L_KNEE, R_KNEE),
        (L_WRIST, PELVIS),
        (R_WRIST, PELVIS),
        (L_ANKLE, PELVIS),
        (R_ANKLE, PELVIS),
        (HEAD, PELVIS),
        (L_WRIST, L_ANKLE),
        (R_WRIST, R_ANKLE),
    ];
    let heights = [HEAD, NECK, PELVIS, L_WRIST, R_WRIST, L_ELBOW, R_ELBOW, L_KNEE, R_KNEE, L_ANKLE, R_ANKLE];
    let mut out = Vec::new();
    for (a, b) in pairs {
        let d: Vec<f64> = frames.iter().map(|f| len(sub(f[a], f[b]))).collect();
        out.push(mean(&d));
        out.push(pop_var(&d).sqrt());
    }
    for j in heights {
        let h: Vec<f64> = frames
            .iter()
            .map(|f| f[j][1] - f.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min))
            .collect();
        out.push(mean(&h));
    }
    out
}

pub fn diversity(feats: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    let mut count = 0;
    for i in 0..feats.len() {
        for k in 0..feats.len() {
            if i < k {
                let mut s = 0.0;
                for c in 0..feats[i].len() {
                    s += (feats[i][c] - feats[k][c]).powi(2);
                }
                total += s.sqrt();
                count += 1;
            }
        }
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64
    }
}

/// Fréchet distance when both covariances are diagonal (features treated
/// independently): `sum (mu1 - mu2)^2 + (s1 - s2)^2` with sample std.
pub fn frechet_diagonal(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let dim = a[0].len();
    let mut total = 0.0;
    for c in 0..dim {
        let xa: Vec<f64> = a.iter().map(|v| v[c]).collect();
        let xb: Vec<f64> = b.iter().map(|v| v[c]).collect();
        let (ma, mb) = (mean(&xa), mean(&xb));
        let sa = (pop_var(&xa) * xa.len() as f64 / (xa.len() as f64 - 1.0)).sqrt();
        let sb = (pop_var(&xb) * xb.len() as f64 / (xb.len() as f64 - 1.0)).sqrt();
        total += (ma - mb).powi(2) + (sa - sb).powi(2);
    }
    total
}

fn normalise(frames: &Frames) -> Vec<Vec<P>> {
    let mut bone_total = 0.0;
    for f in frames {
        for j in 1..24 {
            bone_total += len(sub(f[j], f[PARENTS[j] as usize]));
        }
    }
    let mut scale = bone_total / frames.len() as f64;
    if scale <= 0.0 {
        scale = 1.0;
    }
    let y = yaw(frames);
    frames
        .iter()
        .enumerate()
        .map(|(t, f)| {
            f.iter()
                .map(|&p| {
                    let r = rot_y(sub(p, f[PELVIS]), -y[t]);
                    [r[0] / scale, r[1] / scale, r[2] / scale]
                })
                .collect()
        })
        .collect()
}

/// Textbook DTW with a full `(n+1) x (m+1)` table and an infinite border.
pub fn dtw(a: &Frames, b: &Frames) -> f64 {
    let na = normalise(a);
    let nb = normalise(b);
    let (n, m) = (na.len(), nb.len());
    let mut d = vec![vec![f64::INFINITY; m + 1]; n + 1];
    d[0][0] = 0.0;
    for i in 1..=n {
        for k in 1..=m {
            let mut s = 0.0;
            for j in 0..24 {
                let e = sub(na[i - 1][j], nb[k - 1][j]);
                s += e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
            }
            let best = d[i - 1][k].min(d[i][k - 1]).min(d[i - 1][k - 1]);
            d[i][k] = s.sqrt() + best;
        }
    }
    d[n][m]
}

/// The same recurrence over a precomputed cost matrix.
pub fn dtw_from_costs(cost: &[Vec<f64>]) -> f64 {
    let (n, m) = (cost.len(), cost[0].len());
    let mut d = vec![vec![f64::INFINITY; m + 1]; n + 1];
    d[0][0] = 0.0;
    for i in 1..=n {
        for k in 1..=m {
            let best = d[i - 1][k].min(d[i][k - 1]).min(d[i - 1][k - 1]);
            d[i][k] = cost[i - 1][k - 1] + best;
        }
    }
    d[n][m]
}
