import numpy as np
from numpy.linalg import svd, inv, eigvalsh
from scipy.linalg import expm

rng = np.random.default_rng(7)

# ---------- periodic scalar: dict k -> complex ----------
def pzero(): return {}
def pconst(c): return {0: c} if c != 0 else {}
def padd(f, g):
    h = dict(f)
    for k, v in g.items(): h[k] = h.get(k, 0) + v
    return {k: v for k, v in h.items() if v != 0}
def pscale(f, s): return {k: s*v for k, v in f.items()}
def pmul(f, g):
    h = {}
    for k1, v1 in f.items():
        for k2, v2 in g.items():
            h[k1+k2] = h.get(k1+k2, 0) + v1*v2
    return h
def pder(f): return {k: 1j*k*v for k, v in f.items() if k != 0}
def pmean(f): return 2*np.pi*f.get(0, 0)
def pprim(f):
    assert abs(f.get(0, 0)) < 1e-12, "mean nonzero"
    F = {k: v/(1j*k) for k, v in f.items() if k != 0}
    F[0] = -sum(F.values())  # F(0)=0
    return F
def pconj(f): return {-k: np.conj(v) for k, v in f.items()}
def peval(f, x): return sum(v*np.exp(1j*k*x) for k, v in f.items())
def prand(bw, scale=1.0, real=False):
    f = {}
    for k in range(-bw, bw+1):
        c = (rng.uniform(-1,1) + 1j*rng.uniform(-1,1))*scale
        f[k] = c
    if real:
        g = {}
        for k in range(0, bw+1):
            c = (rng.uniform(-1,1) + 1j*rng.uniform(-1,1))*scale
            if k == 0: c = rng.uniform(-1,1)*scale
            g[k] = c
            if k > 0: g[-k] = np.conj(c)
        return g
    return f

# ---------- 2x2 matrix of periodic scalars ----------
def mzero(): return [[pzero(), pzero()], [pzero(), pzero()]]
def mconstm(M): return [[pconst(M[i][j]) for j in range(2)] for i in range(2)]
I2 = [[1,0],[0,1]]; E2 = [[1,0],[0,-1]]; J2 = [[0,-1],[1,0]]
def madd(A, B): return [[padd(A[i][j], B[i][j]) for j in range(2)] for i in range(2)]
def mscale(A, s): return [[pscale(A[i][j], s) for j in range(2)] for i in range(2)]
def mmul(A, B):
    return [[padd(pmul(A[i][0], B[0][j]), pmul(A[i][1], B[1][j])) for j in range(2)] for i in range(2)]
def mder(A): return [[pder(A[i][j]) for j in range(2)] for i in range(2)]
def mtrans(A): return [[A[j][i] for j in range(2)] for i in range(2)]
def mdiag(A): return [[A[0][0], pzero()],[pzero(), A[1][1]]]
def moff(A): return [[pzero(), A[0][1]],[A[1][0], pzero()]]
def mtrace(A): return padd(A[0][0], A[1][1])
def mrand(bw, scale=1.0, real=False):
    return [[prand(bw, scale, real) for _ in range(2)] for _ in range(2)]
def msup(A):
    xs = np.linspace(0, 2*np.pi, 64, endpoint=False)
    m = 0.0
    for x in xs:
        M = np.array([[peval(A[i][j], x) for j in range(2)] for i in range(2)])
        m = max(m, svd(M, compute_uv=False)[0])
    return m

# ---------- cutoff ----------
def hfun(s): return np.exp(-1.0/s) if s > 0 else 0.0
def psi(s):
    if s <= 0: return 0.0
    if s >= 1: return 1.0
    return hfun(s)/(hfun(s)+hfun(1-s))
def phi_r(r, xi): return psi(abs(xi)-r)

# ---------- Galerkin ----------
# flatten (mode m in [-N,N], comp c) -> 2*(m+N)+c
def galerkin(terms, N, r=None):
    # terms: list of (matrixcoef, gfun) with gfun(k)->complex
    dim = 2*(2*N+1)
    G = np.zeros((dim, dim), dtype=complex)
    for (F, gf) in terms:
        for kcol in range(-N, N+1):
            gv = gf(kcol)
            if gv == 0: continue
            for i in range(2):
                for j in range(2):
                    for dk, c in F[i][j].items():
                        jrow = kcol + dk
                        if -N <= jrow <= N:
                            G[2*(jrow+N)+i, 2*(kcol+N)+j] += c*gv
    return G

def opnorm(M): return svd(M, compute_uv=False)[0]

# ---------- complex-system coefficient machinery (D_x convention, symbol in xi=k) ----------
def B1_of(A, B):
    Aoff = moff(A); E = mconstm(E2)
    t = madd(B, mscale(mder(Aoff), 2j))
    t = madd(t, mscale(mmul(Aoff, mmul(E, Aoff)), 0.5))
    t = madd(t, mscale(mmul(A, mmul(E, Aoff)), -0.5))
    t = madd(t, mscale(mmul(Aoff, mmul(E, A)), -0.5))
    return t
def C1_of(A, B, C):
    Aoff = moff(A); E = mconstm(E2); dA = mder(A); dAoff = moff(dA)
    t = madd(C, mscale(mder(mder(Aoff)), 3.0))
    t = madd(t, mscale(mmul(A, mmul(E, dAoff)), 1.5j))
    t = madd(t, mscale(mmul(Aoff, mmul(E, dA)), -0.5j))
    t = madd(t, mscale(mmul(Aoff, mmul(E, dAoff)), -1.5j))
    t = madd(t, mscale(mmul(dAoff, mmul(E, Aoff)), -1j))
    t = madd(t, mscale(mmul(A, mmul(E, mmul(Aoff, mmul(E, Aoff)))), 0.25))
    t = madd(t, mscale(mmul(Aoff, mmul(E, mmul(A, mmul(E, Aoff)))), 0.25))
    t = madd(t, mscale(mmul(Aoff, mmul(E, mmul(Aoff, mmul(E, Aoff)))), -0.25))
    t = madd(t, mscale(mmul(B, mmul(E, Aoff)), -0.5))
    t = madd(t, mscale(mmul(Aoff, mmul(E, B)), -0.5))
    return t
def C2_of(A, B1, C1, Boff_variant=None):
    # Boff_variant: if given, use it in the A^diag E X terms (paper display uses B^off)
    X = moff(B1) if Boff_variant is None else Boff_variant
    Adiag = mdiag(A); E = mconstm(E2)
    t = madd(C1, mscale(mder(moff(B1)), 2j))
    t = madd(t, mscale(mmul(Adiag, mmul(E, X)), -0.5))
    t = madd(t, mscale(mmul(X, mmul(E, Adiag)), -0.5))
    return t

def complex_conditions(A, B, C):
    a11, a12, a21, a22 = A[0][0], A[0][1], A[1][0], A[1][1]
    b11, b12, b21, b22 = B[0][0], B[0][1], B[1][0], B[1][1]
    c11, c22 = C[0][0], C[1][1]
    res = []
    res.append(np.imag(pmean(a11)))
    res.append(np.imag(pmean(a22)))
    res.append(np.imag(pmean(padd(b11, pscale(padd(pscale(pmul(a11,a11),3), pscale(pmul(a12,a21),-4)), -1/8)))))
    res.append(np.imag(pmean(padd(b22, pscale(padd(pscale(pmul(a22,a22),3), pscale(pmul(a12,a21),-4)), 1/8)))))
    i5 = c11
    i5 = padd(i5, pscale(pmul(pder(a12), a21), 0.5j))
    i5 = padd(i5, pscale(padd(pmul(a11,b11), padd(pscale(pmul(a12,b21),-1), pscale(pmul(a21,b12),-1))), -0.5))
    cub = padd(pmul(a11,pmul(a11,a11)), padd(pscale(pmul(a11,pmul(a12,a21)),4), pscale(pmul(a12,pmul(a21,a22)),-2)))
    i5 = padd(i5, pscale(cub, -1/8))
    res.append(np.imag(pmean(i5)))
    i6 = c22
    i6 = padd(i6, pscale(pmul(a12, pder(a21)), -0.5j))
    i6 = padd(i6, pscale(padd(pmul(a22,b22), padd(pscale(pmul(a12,b21),-1), pscale(pmul(a21,b12),-1))), 0.5))
    cub = padd(pmul(a22,pmul(a22,a22)), padd(pscale(pmul(a12,pmul(a21,a22)),-4), pscale(pmul(a11,pmul(a12,a21)),2)))
    i6 = padd(i6, pscale(cub, 1/8))
    res.append(np.imag(pmean(i6)))
    return res

# ================= TEST 1: diagonalization residual, criterion 3 =================
def diag_residual(A, B, C, N, r, use_B1off=True):
    E = mconstm(E2)
    B1 = B1_of(A, B); C1 = C1_of(A, B, C)
    C2 = C2_of(A, B1, C1) if use_B1off else C2_of(A, B1, C1, Boff_variant=moff(B))
    # P symbol terms (D_x convention: xi = k)
    Pterms = [(E, lambda k: k**4), (A, lambda k: k**3), (B, lambda k: k**2), (C, lambda k: k)]
    GP = galerkin(Pterms, N)
    lam1 = [(mscale(mmul(E, moff(A)), 0.5), lambda k: phi_r(r,k)/k if k != 0 else 0.0)]
    lam2 = [(mscale(mmul(E, moff(B1)), 0.5), lambda k: phi_r(r,k)/k**2 if k != 0 else 0.0)]
    lam3 = [(mscale(mmul(E, moff(C2)), 0.5), lambda k: phi_r(r,k)/k**3 if k != 0 else 0.0)]
    dim = 2*(2*N+1)
    L1 = np.eye(dim) + galerkin(lam1, N)
    L2 = np.eye(dim) + galerkin(lam2, N)
    L3 = np.eye(dim) + galerkin(lam3, N)
    G = L3 @ L2 @ L1 @ GP @ inv(L1) @ inv(L2) @ inv(L3)
    P3terms = [(E, lambda k: k**4), (mdiag(A), lambda k: k**3), (mdiag(B1), lambda k: k**2), (mdiag(C2), lambda k: k)]
    GP3 = galerkin(P3terms, N)
    R = G - GP3
    # off-diagonal component part, inner modes |k| <= N/2
    Nh = N//2
    idx1 = [2*(m+N)+0 for m in range(-Nh, Nh+1)]
    idx2 = [2*(m+N)+1 for m in range(-Nh, Nh+1)]
    R12 = R[np.ix_(idx1, idx2)]; R21 = R[np.ix_(idx2, idx1)]
    return max(opnorm(R12), opnorm(R21))

print("=== criterion 3 prototype ===")
for trial in range(3):
    A = mrand(2, 0.35); B = mrand(2, 0.35); C = mrand(2, 0.35)
    r = 8
    for name, useb1 in [("B1off", True), ("Boff(paper display)", False)]:
        v32 = diag_residual(A, B, C, 32, r, useb1)
        v64 = diag_residual(A, B, C, 64, r, useb1)
        print(f" trial{trial} {name}: res32={v32:.4f} res64={v64:.4f} ratio={v64/v32:.3f}")
    # raw P ratio
    def raw_off(N):
        Pterms = [(moff(A), lambda k: k**3), (moff(B), lambda k: k**2), (moff(C), lambda k: k)]
        GR = galerkin(Pterms, N)
        Nh = N//2
        idx1 = [2*(m+N)+0 for m in range(-Nh, Nh+1)]
        idx2 = [2*(m+N)+1 for m in range(-Nh, Nh+1)]
        return max(opnorm(GR[np.ix_(idx1, idx2)]), opnorm(GR[np.ix_(idx2, idx1)]))
    print(f" trial{trial} raw ratio: {raw_off(64)/raw_off(32):.3f}")

# ---- sensitive test of C2 variant: measure off-diag residual on modes r+2..N/2 only
def diag_residual_band(A, B, C, N, r, use_B1off=True, lo=None):
    E = mconstm(E2)
    B1 = B1_of(A, B); C1 = C1_of(A, B, C)
    C2 = C2_of(A, B1, C1) if use_B1off else C2_of(A, B1, C1, Boff_variant=moff(B))
    Pterms = [(E, lambda k: k**4), (A, lambda k: k**3), (B, lambda k: k**2), (C, lambda k: k)]
    GP = galerkin(Pterms, N)
    lam1 = [(mscale(mmul(E, moff(A)), 0.5), lambda k: phi_r(r,k)/k if k != 0 else 0.0)]
    lam2 = [(mscale(mmul(E, moff(B1)), 0.5), lambda k: phi_r(r,k)/k**2 if k != 0 else 0.0)]
    lam3 = [(mscale(mmul(E, moff(C2)), 0.5), lambda k: phi_r(r,k)/k**3 if k != 0 else 0.0)]
    dim = 2*(2*N+1)
    L1 = np.eye(dim) + galerkin(lam1, N)
    L2 = np.eye(dim) + galerkin(lam2, N)
    L3 = np.eye(dim) + galerkin(lam3, N)
    G = L3 @ L2 @ L1 @ GP @ inv(L1) @ inv(L2) @ inv(L3)
    P3terms = [(E, lambda k: k**4), (mdiag(A), lambda k: k**3), (mdiag(B1), lambda k: k**2), (mdiag(C2), lambda k: k)]
    R = G - galerkin(P3terms, N)
    Nh = N//2
    lo = (r+2) if lo is None else lo
    modes = [m for m in range(-Nh, Nh+1) if abs(m) >= lo]
    idx1 = [2*(m+N)+0 for m in modes]; idx2 = [2*(m+N)+1 for m in modes]
    return max(opnorm(R[np.ix_(idx1, idx2)]), opnorm(R[np.ix_(idx2, idx1)]))

print("=== C2 variant sensitivity (band-restricted) ===")
A = mrand(2, 0.35); B = mrand(2, 0.35); C = mrand(2, 0.35)
for name, useb1 in [("B1off", True), ("Boff", False)]:
    v32 = diag_residual_band(A, B, C, 32, 8, useb1)
    v64 = diag_residual_band(A, B, C, 64, 8, useb1)
    print(f" {name}: band res32={v32:.4f} res64={v64:.4f} ratio={v64/v32:.3f}")
