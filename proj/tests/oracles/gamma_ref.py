"""Reference values of G(s, z) = z^(-s) Gamma(s, z) and log Gamma(s) at 50 digits.

    python3 gamma_ref.py
"""
import mpmath as mp

mp.mp.dps = 50

CASES = [
    (mp.mpc(0.5, 30), mp.mpc(3, 0)),
    (mp.mpc(0.5, 1000), 50 * mp.exp(1j * (mp.pi / 2 - mp.mpf(12) / 1000))),
    (mp.mpc(-2.5, 1), mp.mpc(0.1, 0)),
    (mp.mpc(2, 0), mp.mpc(10, 0)),
    (mp.mpc(0.25, -7), mp.mpc(0.4, 1.2)),
    (mp.mpc(-1, 0.2), mp.mpc(2.5, 0)),
]

for s, z in CASES:
    g = mp.gammainc(s, z) * z ** (-s)
    print("s=%s z=%s G=%s %s" % (mp.nstr(s, 17), mp.nstr(z, 17), mp.nstr(mp.re(g), 20), mp.nstr(mp.im(g), 20)))

for s in (mp.mpc(0.5, 100), mp.mpc(3.7, -2), mp.mpc(0.5, 4e4)):
    v = mp.loggamma(s)
    print("loggamma %s = %s %s" % (mp.nstr(s, 10), mp.nstr(mp.re(v), 20), mp.nstr(mp.im(v), 20)))
