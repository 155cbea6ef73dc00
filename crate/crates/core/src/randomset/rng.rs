//! Counter-based random streams (Philox4x32-10).
//!
//! Every Monte-Carlo draw is addressed by `(seed, sample index, stream tag)`,
//! so any partition of the sample range over threads sees the same numbers.

const M0: u32 = 0xD251_1F53;
const M1: u32 = 0xCD9E_8D57;
const W0: u32 = 0x9E37_79B9;
const W1: u32 = 0xBB67_AE85;

#[inline]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// The Philox4x32 bijection with 10 rounds.
pub fn philox4x32_10(ctr: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut c = ctr;
    let mut k = key;
    for round in 0..10 {
        if round > 0 {
            k[0] = k[0].wrapping_add(W0);
            k[1] = k[1].wrapping_add(W1);
        }
        let (hi0, lo0) = mulhilo(M0, c[0]);
        let (hi1, lo1) = mulhilo(M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

const TWO_POW_M53: f64 = 1.0 / (1u64 << 53) as f64;

/// A sequential stream of variates for one `(seed, index, tag)` triple.
#[derive(Debug, Clone)]
pub struct SampleStream {
    key: [u32; 2],
    index: u64,
    tag: u32,
    block: u32,
    buf: [u32; 4],
    pos: usize,
    spare_normal: Option<f64>,
}

impl SampleStream {
    pub fn new(seed: u64, index: u64, tag: u32) -> Self {
        SampleStream {
            key: [seed as u32, (seed >> 32) as u32],
            index,
            tag,
            block: 0,
            buf: [0; 4],
            pos: 4,
            spare_normal: None,
        }
    }

    pub fn next_u32(&mut self) -> u32 {
        if self.pos == 4 {
            let ctr = [self.index as u32, (self.index >> 32) as u32, self.tag, self.block];
            self.buf = philox4x32_10(ctr, self.key);
            self.block = self.block.wrapping_add(1);
            self.pos = 0;
        }
        let v = self.buf[self.pos];
        self.pos += 1;
        v
    }

    pub fn next_u64(&mut self) -> u64 {
        let lo = u64::from(self.next_u32());
        let hi = u64::from(self.next_u32());
        (hi << 32) | lo
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * TWO_POW_M53
    }

    /// Uniform on (0, 1], the range used for cut levels.
    pub fn alpha(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * TWO_POW_M53
    }

    /// Standard normal variate (Box-Muller, both outputs used).
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let r = (-2.0 * self.alpha().ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * self.uniform()).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }
}
