"""Independent high-precision reference values, frozen into frozen_values.hpp.

Run: python3 tests/oracles/freeze.py > tests/frozen_values.hpp
"""
import mpmath as mp

mp.mp.dps = 40
out = []


def emit(name, value, note):
    out.append(f"// {note}\ninline constexpr double {name} = {mp.nstr(value, 20, min_fixed=-1, max_fixed=-1)};")


def fbs(H, s, t):
    r = mp.mpf(1)
    for h, a, b in zip(H, s, t):
        r *= (mp.mpf(b) ** (2 * h) + mp.mpf(a) ** (2 * h) - abs(mp.mpf(b) - a) ** (2 * h)) / 2
    return r


emit("kCovFbs_03_07", fbs([mp.mpf("0.3"), mp.mpf("0.7")], [1, 1], [2, 3]),
     "fBs H=(0.3,0.7), s=(1,1), t=(2,3)")


def power_wave_tail(omega, q):
    # int_1^inf e^{i omega y} y^{-q} dy = (-i omega)^{q-1} Gamma(1-q, -i omega)
    if omega == 0:
        return 1 / (q - 1)
    z = mp.mpc(0, -omega)
    return z ** (q - 1) * mp.gammainc(1 - q, z)


def orthant_integral(H, s, t):
    # int_0^inf (e^{ity}-1)(e^{-isy}-1) / y^{2H+1} dy: quadrature on [0,1],
    # tail expanded into the four pure waves.
    q = 2 * H + 1
    f = lambda y: (mp.expj(t * y) - 1) * (mp.expj(-s * y) - 1) / y ** q
    head = mp.quad(f, [0, mp.mpf(1) / 2, 1])
    tail = (power_wave_tail(t - s, q) - power_wave_tail(t, q) - power_wave_tail(-s, q) +
            power_wave_tail(0, q))
    return head + tail


def strict_general_oracle(H, gamma_by_mask, s, t):
    N = len(H)
    norm = mp.mpf(1)
    for h in H:
        norm *= mp.gamma(1 + 2 * h) * mp.sin(mp.pi * h) / mp.pi
    plus = [orthant_integral(H[j], s[j], t[j]) for j in range(N)]
    total = mp.mpc(0)
    for mask, g in enumerate(gamma_by_mask):
        if g == 0:
            continue
        p = mp.mpc(g * norm)
        for j in range(N):
            p *= mp.conj(plus[j]) if (mask >> j) & 1 else plus[j]
        total += p
    return total


H = [mp.mpf("0.3"), mp.mpf("0.7")]
v = strict_general_oracle(H, [mp.mpf("0.5"), 0, 0, mp.mpf("0.5")], [1, 1], [2, mp.mpf("1.5")])
emit("kStrictGeneralOracle", mp.re(v),
     "strict class, H=(0.3,0.7), gamma_{++}=gamma_{--}=1/2, s=(1,1), t=(2,1.5); orthant quadrature")
emit("kStrictGeneralOracleImag", mp.im(v), "imaginary part of the same quadrature")

emit("kStrict2dHalfGamma1", 1 + (2 * mp.log(2)) ** 2 / mp.pi ** 2, "H=(1/2,1/2), gamma=1, s=(1,1), t=(2,2)")


def cfbs1(h, v):
    return mp.cosh(h * v) - mp.mpf(2) ** (2 * h - 1) * abs(mp.sinh(v / 2)) ** (2 * h)


emit("kCfbs_03_1", cfbs1(mp.mpf("0.3"), 1), "C_fBs, H=0.3, v=1")


def ctheta(h1, h2, th, v1, v2):
    d = lambda h, v: mp.exp(-h * abs(v)) * mp.sinh(h * v)
    return cfbs1(h1, v1) * cfbs1(h2, v2) * (1 + th * d(h1, v1) * d(h2, v2))


emit("kCtheta_03_07_1", ctheta(mp.mpf("0.3"), mp.mpf("0.7"), 1, 1, -1), "C_theta, H=(0.3,0.7), theta=1, v=(1,-1)")


def gfbm(h, x):
    x = mp.mpf(x)
    trig = mp.sin(mp.pi * h) * mp.cosh(mp.pi * x) / (
        mp.sin(mp.pi * h) ** 2 * mp.cosh(mp.pi * x) ** 2 + mp.cos(mp.pi * h) ** 2 * mp.sinh(mp.pi * x) ** 2)
    return 1 / (2 * mp.pi) * 2 * h / (h ** 2 + x ** 2) * mp.pi * mp.gamma(2 * h) / abs(mp.gamma(mp.mpc(h, x))) ** 2 * trig


emit("kGfbm_03_1", gfbm(mp.mpf("0.3"), 1), "spectral density, H=0.3, x=1")
h = mp.mpf("0.3")
inv = (mp.quad(lambda v: mp.cos(v) * cfbs1(h, v), [0, 1]) +
       mp.quadosc(lambda v: mp.cos(v) * cfbs1(h, v), [1, mp.inf], omega=1)) / mp.pi
emit("kGfbm_03_1_from_cov", inv, "cosine transform of C_fBs at H=0.3, x=1")

for name, z in [("kLogAbsGamma_a", mp.mpc("0.3", "1")), ("kLogAbsGamma_b", mp.mpc("0.1", "25")),
                ("kLogAbsGamma_c", mp.mpc("-2.5", "0.5")), ("kLogAbsGamma_d", mp.mpc("7.25", "-40"))]:
    emit(name, mp.log(abs(mp.gamma(z))), f"log|Gamma({mp.nstr(z, 6)})|")


emit("kAbsGamma_03_07", abs(mp.gamma(mp.mpc("0.3", "0.7"))), "|Gamma(0.3+0.7i)|")
for h in ["0.25", "0.75"]:
    H = mp.mpf(h)
    emit("kC1_" + h.replace("0.", ""), mp.sqrt(H * mp.gamma(2 * H) * mp.sin(mp.pi * H) / mp.pi), f"c1({h})")
for h in ["0.25", "0.9"]:
    H = mp.mpf(h)
    emit("kC2_" + h.replace("0.", ""), mp.sqrt(mp.gamma(1 + 2 * H) * mp.sin(mp.pi * H)) / mp.gamma(H + mp.mpf(1) / 2), f"c2({h})")


def lemma1_quad(H, s, t):
    return orthant_integral(H, s, t)


l1 = lemma1_quad(mp.mpf("0.3"), 1, 2)
emit("kLemma1_03_1_2_re", mp.re(l1), "int_0^inf (e^{2iy}-1)(e^{-iy}-1) y^{-1.6} dy, real part")
emit("kLemma1_03_1_2_im", mp.im(l1), "same, imaginary part")


def lemma3_quad(H, eps, t, x):
    f = lambda y: (mp.expj((t - x) * eps * y) - mp.expj(-x * eps * y)) / (1j * eps * y ** (H + mp.mpf(1) / 2))
    return mp.quad(f, [0, 1]) + mp.quadosc(f, [1, mp.inf], omega=max(abs(t - x), abs(x)))


l3 = lemma3_quad(mp.mpf("0.7"), 1, 1, mp.mpf("-0.5"))
emit("kLemma3_07_re", mp.re(l3), "third oracle integral, H=0.7, eps=1, t=1, x=-0.5, real part")
emit("kLemma3_07_im", mp.im(l3), "same, imaginary part")

l4 = (lambda h: mp.quad(h, [0, 1]) + mp.quadosc(h, [1, mp.inf], omega=1))(
    lambda y: (mp.expj(2 * y) - mp.expj(y)) / (1j * y))
emit("kLemma4_1_m1_im", mp.im(l4), "int_0^inf (e^{2iy} - e^{iy}) / (iy) dy, imaginary part (real part 0)")


def pp(h, a, t, s):
    """int (first/second basis factor at t) x (factor at s) dx for H != 1/2."""
    al = h - mp.mpf(1) / 2
    pos = lambda u: u ** al if u > 0 else mp.mpf(0)
    q = [lambda tt, x: pos(tt - x) - pos(-x), lambda tt, x: pos(x - tt) - pos(x)]
    f = lambda x: q[a[0]](t, x) * q[a[1]](s, x)
    cuts = sorted({0, mp.mpf(s), mp.mpf(t)})
    lo, hi = cuts[0], cuts[-1]
    return mp.quad(f, [-mp.inf, lo - 1, lo] + cuts[1:] + [hi + 1, mp.inf])


emit("kMaBasis_03_pf", pp(mp.mpf("0.3"), (0, 1), mp.mpf("1.3"), mp.mpf("0.6")),
     "int p(1.3,x) f(0.6,x) dx at H=0.3")
emit("kMaBasis_07_pp", pp(mp.mpf("0.7"), (0, 0), mp.mpf("2"), mp.mpf("0.5")),
     "int p(2,x) p(0.5,x) dx at H=0.7")

print("#pragma once\n\n// Generated by tests/oracles/freeze.py (mpmath, 40 digits).\n\nnamespace frozen {\n")
print("\n".join(out))
print("\n}  // namespace frozen")
