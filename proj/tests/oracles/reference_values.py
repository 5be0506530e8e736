"""High-precision reference values frozen into the C++ unit tests.

Run with python3 (needs mpmath). Each block prints the literals pasted into
the corresponding test file; the evaluation here is independent of the
library (arbitrary-precision series, no cancellation concerns).
"""
from mpmath import mp, mpf, sin, pi, factorial, exp, erfc, nsum, zeta, euler, quad

mp.dps = 60


def direct_sum(term, dps=600, tol=mpf(10) ** -40):
    """Plain summation at very high precision until terms fall below tol."""
    with mp.workdps(dps):
        s, j, small = mpf(0), 0, 0
        while True:
            t = term(j)
            s += t
            small = small + 1 if abs(t) < tol else 0
            if small >= 5 and j > 10:
                return +s
            j += 1


def mwright(x, a):
    x, a = mpf(x), mpf(a)
    # 1/Gamma at the poles is 0
    return direct_sum(lambda j: (-x) ** j / factorial(j) * mp.rgamma(-a * j + (1 - a)))


def mittag_leffler(z, a):
    z, a = mpf(z), mpf(a)
    return direct_sum(lambda j: z ** j * mp.rgamma(1 + a * j))


print("// M_alpha(x)")
# alpha = 0.9 stops at 2: past that 600 digits no longer survive the cancellation
grid = {"0.3": ["0.1", "0.5", "1", "1.5", "2", "3", "4", "6", "10"],
        "0.7": ["0.1", "0.5", "1", "1.5", "2", "3", "4", "6"],
        "0.9": ["0.1", "0.5", "1", "1.5", "2"]}
for a, xs in grid.items():
    for x in xs:
        print(f"    {{{a}, {x}, {mp.nstr(mwright(x, a), 17)}}},")



def mwright_kanter(x, a):
    """Integral form, used where the series is hopeless."""
    x, a = mpf(x), mpf(a)
    c = 1 - a
    k = x ** (1 / c)
    kan = lambda f: (sin(a * f) / sin(f)) ** (1 / c) * sin(c * f) / sin(a * f)
    a0 = c * a ** (a / c)
    inner = quad(lambda f: kan(f) * exp(-k * (kan(f) - a0)), [0, mpf("0.001"), mpf("0.01"), mpf("0.1"), pi])
    return x ** (a / c) / (c * pi) * exp(-k * a0) * inner


print("// M_alpha(x), integral form")
for a, x in [("0.9", "2"), ("0.9", "2.5"), ("0.7", "4")]:
    print(f"    {{{a}, {x}, {mp.nstr(mwright_kanter(x, a), 17)}}},")

print("// E_order(z)")
for a in ["0.25", "0.5", "0.75", "1.5"]:
    for z in ["-0.5", "-1", "-3", "-5"]:
        print(f"    {{{a}, {z}, {mp.nstr(mittag_leffler(z, a), 17)}}},")
for a in ["0.5", "0.75"]:
    for z in ["-6", "-10", "-20"]:
        print(f"    {{{a}, {z}, {mp.nstr(mittag_leffler(z, a), 17)}}},")

print("// misc")
print("E_1/2(-1) = e*erfc(1) =", mp.nstr(exp(1) * erfc(1), 17))
print("Q(1) =", mp.nstr(2 * nsum(lambda k: (-1) ** (k - 1) * exp(-2 * k * k), [1, 100]), 17))
print("Q(0.5) =", mp.nstr(2 * nsum(lambda k: (-1) ** (k - 1) * exp(-2 * k * k / 4), [1, 400]), 17))
print("Q(1.2) =", mp.nstr(2 * nsum(lambda k: (-1) ** (k - 1) * exp(-2 * k * k * mpf('1.44')), [1, 400]), 17))
print("zeta3 =", mp.nstr(zeta(3), 20), "gamma =", mp.nstr(euler, 20))


def delta_cov(a, rho):
    """Sigma' from scratch: cumulants of log X by differentiating
    log E X^k = lgamma(1+k) - lgamma(1+a k) + k log rho, then J Sigma J^T
    with J the numeric Jacobian of (m, v) -> (sqrt(1-6v/pi^2), exp(m + gamma(1-alpha)))."""
    a, rho = mpf(a), mpf(rho)
    cgf = lambda k: mp.loggamma(1 + k) - mp.loggamma(1 + a * k) + k * mp.log(rho)
    k = [mp.diff(cgf, 0, n) for n in range(5)]
    var, mu3, mu4 = k[2], k[3], k[4] + 3 * k[2] ** 2
    sig = mp.matrix([[var, mu3], [mu3, mu4 - var ** 2]])
    alpha_of = lambda m, v: mp.sqrt(1 - 6 * v / pi ** 2)
    rho_of = lambda m, v: exp(m + euler * (1 - alpha_of(m, v)))
    m0, v0 = k[1], k[2]
    jac = mp.matrix([[mp.diff(lambda m: alpha_of(m, v0), m0), mp.diff(lambda v: alpha_of(m0, v), v0)],
                     [mp.diff(lambda m: rho_of(m, v0), m0), mp.diff(lambda v: rho_of(m0, v), v0)]])
    s = jac * sig * jac.T
    return s[0, 0], s[0, 1], s[1, 1]


print("// Sigma' by the delta method")
for a, rho in [("0.5", "1"), ("0.473", "4.39"), ("0.6", "8.77"), ("0.8", "375"), ("0.4", "150")]:
    saa, sar, srr = delta_cov(a, rho)
    print(f"    {{{a}, {rho}, {mp.nstr(saa, 17)}, {mp.nstr(sar, 17)}, {mp.nstr(srr, 17)}}},")
