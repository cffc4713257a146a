"""Reference values for the C++ tests, computed without the library's closed forms.

Every Jost-type solution is built from the Crum determinant
    psi = W(phi, phi_q, phi_qq, phi_qqq, e) / W(phi, phi_q, phi_qq, phi_qqq)
with phi = sin(q r + arctan(alpha q - beta)), using sympy for the partial
derivatives and mpmath at 60 digits for everything numerical.

Run: python3 tests/oracles/oracles.py
"""
import sympy as sp
import mpmath as mp

mp.mp.dps = 60

q_s, r_s = sp.symbols("q r", real=True)
ALPHA, BETA, Q = 1, 3, 1

phi = sp.sin(q_s * r_s + sp.atan(ALPHA * q_s - BETA))
# table[i][j] = d^i/dr^i d^j/dq^j phi at q = Q, as functions of r
MAX_R = 6
table = []
for i in range(MAX_R + 1):
    row = []
    for j in range(4):
        e = sp.diff(phi, q_s, j, r_s, i).subs(q_s, Q)
        row.append(sp.lambdify(r_s, e, "mpmath"))
    table.append(row)


def phis(r, i):
    return [table[i][j](mp.mpf(r)) for j in range(4)]


def w1(r, shift=0):
    """d^shift/dr^shift of the 4x4 Wronskian (shift <= 2)."""
    rows = [phis(r, i) for i in range(4)]
    if shift == 0:
        return mp.det(mp.matrix(rows))
    # derivative of a Wronskian: differentiate one row at a time
    return mp.diff(lambda x: mp.det(mp.matrix([phis(x, i) for i in range(4)])), mp.mpf(r), shift)


def crum(r, k, sign, deriv=False):
    """W(phi..phi_qqq, e^{sign i k r}) and optionally its r-derivative."""
    r = mp.mpf(r)
    e = lambda i: (sign * 1j * k) ** i * mp.exp(sign * 1j * k * r)
    rows = [phis(r, i) + [e(i)] for i in range(5)]
    w = mp.det(mp.matrix(rows))
    if not deriv:
        return w
    rows2 = [phis(r, i) + [e(i)] for i in range(4)] + [phis(r, 5) + [e(5)]]
    return w, mp.det(mp.matrix(rows2))


def section(title):
    print(f"\n== {title}")


section("phase data")
t = ALPHA * Q - BETA
delta = mp.atan(t)
dq = lambda n: mp.diff(lambda qq: mp.atan(ALPHA * qq - BETA), Q, n)
print("delta", mp.nstr(delta, 17), "gamma0..2", [mp.nstr(dq(n), 17) for n in (1, 2, 3)])

section("W1 and V4")
for r in ["0", "0.5", "1", "2.5", "7.25"]:
    W = w1(r)
    V = -2 * mp.diff(lambda x: mp.log(mp.det(mp.matrix([phis(x, i) for i in range(4)]))), mp.mpf(r), 2)
    print(f"r={r}: W1 {mp.nstr(W, 17)}  V4 {mp.nstr(V, 17)}")
logw = lambda x: mp.log(mp.det(mp.matrix([phis(x, i) for i in range(4)])))
V = lambda x: -2 * mp.diff(logw, x, 2)
dV = lambda x: mp.diff(V, x, 1)
# first interior maximum of V: scan for the sign change of V'
xs = [mp.mpf(i) / 50 for i in range(1, 400)]
prev = dV(xs[0])
for x in xs[1:]:
    cur = dV(x)
    if prev > 0 and cur < 0:
        xm = mp.findroot(dV, x)
        print("first max r", mp.nstr(xm, 15), "V", mp.nstr(V(xm), 15))
        break
    prev = cur

section("u, v at k = 2, r = 1 (w+- = u +- i v)")
k = mp.mpf(2)
r = mp.mpf(1)
wp = crum(r, k, +1) * mp.exp(-1j * k * r)
wm = crum(r, k, -1) * mp.exp(1j * k * r)
print("u", mp.nstr((wp + wm) / 2, 17), "v", mp.nstr((wp - wm) / 2j, 17))

section("Wronskian of f+, f- at k = 1.5, r = 3")
k = mp.mpf("1.5")
W = w1(3)
fp, fpr = crum(3, k, +1, True)
fm, fmr = crum(3, k, -1, True)
# f = crum / W1; W(f+, f-) = (fp fmr - fm fpr) / W1^2
wr = (fp * fmr - fm * fpr) / W**2
print("W(f+,f-)", mp.nstr(wr, 17), " -2ik(k^2-q^2)^4", mp.nstr(-2j * k * (k * k - Q * Q) ** 4, 17))

section("truncated problem, a = 5000")
A = 5000


def incoming(k):
    """Coefficient of e^{-ikr} outside r = a, up to a k-dependent factor
    that has no zeros: i k Phi(a) - Phi'(a) with Phi(r) = f-(0) f+(r) - f+(0) f-(r)."""
    fp0 = crum(0, k, +1)
    fm0 = crum(0, k, -1)
    fpa, fpa_r = crum(A, k, +1, True)
    fma, fma_r = crum(A, k, -1, True)
    # 1/W1(a) is common to both terms and its derivative enters symmetrically
    W = w1(A)
    Wr = w1(A, 1)
    ph = (fm0 * fpa - fp0 * fma) / W
    ph_r = (fm0 * fpa_r - fp0 * fma_r) / W - ph * Wr / W
    return 1j * k * ph - ph_r, ph, ph_r


for seed in [mp.mpc("0.9989844", "-0.000173"), mp.mpc("1.0010156", "-0.000173"),
             mp.mpc("0.997048", "-0.000271")]:
    root = mp.findroot(lambda z: incoming(z)[0], seed, tol=mp.mpf(10) ** -40)
    print("resonance", mp.nstr(root.real, 16), mp.nstr(-root.imag, 16))


def sin_delta_num(k):
    _, ph, ph_r = incoming(k)
    # Phi ~ sin(k r + delta) outside: delta = 0 mod pi <=> Phi' sin ka - k Phi cos ka = 0
    val = ph_r * mp.sin(k * A) - k * ph * mp.cos(k * A)
    return val.imag if abs(val.imag) > abs(val.real) else val.real


for seed in ["0.99972", "1.00053"]:
    z = mp.findroot(sin_delta_num, mp.mpf(seed), tol=mp.mpf(10) ** -40)
    print("sigma zero", mp.nstr(z, 16))

section("Y(k) roots for the reference doublet")
k1, h1 = mp.mpf("0.9989844032"), mp.mpf("0.0001730065")
k2, h2 = mp.mpf("1.0010155756"), mp.mpf("0.0001731296")
# Y = k^2 - (k1 + k2) k + k1 k2 - Gamma1 Gamma2 / 4 with Gamma = 2 h
roots = mp.polyroots([1, -(k1 + k2), k1 * k2 - h1 * h2])
print("Y roots", [mp.nstr(x, 17) for x in roots])

section("model minima for lambda0 = 1311.3931, lambda1 = -1312.2167, a = 5000")
l0, l1 = mp.mpf("1311.3931"), mp.mpf("-1312.2167")


def model_num(k):
    Y = (k - k1) * (k - k2) - h1 * h2
    Z = ((k - k1) * 2 * h2 + (k - k2) * 2 * h1) / 2
    lam = l0 + l1 * k
    s, c = mp.sin(k * A), mp.cos(k * A)
    return (Y - lam * Z) * s + (lam * Y + Z) * c


for seed in ["0.99972", "1.00053"]:
    z = mp.findroot(model_num, mp.mpf(seed))
    print("model zero", mp.nstr(z, 17))

section("bound state shape: f+(q, r) = crum(r, q) / W1(r) at the coalescence")
for r in ["0.5", "1", "2.5", "7.25"]:
    f = crum(r, mp.mpf(Q), +1) / w1(r)
    print(f"r={r}: f+ {mp.nstr(f, 17)}")
