from proto import *

# ---------- real gauge machinery (d/dx convention: symbol uses (i xi)^m) ----------
def real_gauge(beta, gamma):
    trb = mtrace(beta)
    Psi4 = pprim(trb)                                # needs cond 11
    beta4 = madd(beta, mscale([[pder(Psi4),pzero()],[pzero(),pder(Psi4)]], -0.5))
    J = mconstm(J2)
    gamma4 = gamma
    gamma4 = madd(gamma4, mscale([[pder(pder(Psi4)),pzero()],[pzero(),pder(pder(Psi4))]], -0.75))
    psq = pmul(Psi4, Psi4)
    gamma4 = madd(gamma4, mscale(mmul(mconstm([[1,0],[0,1]]), J), 0))  # no-op
    gamma4 = madd(gamma4, [[pzero(), pscale(pder(psq), 1/32)],[pscale(pder(psq), -1/32), pzero()]])  # -(1/32){Psi4^2}_x J ; J=[[0,-1],[1,0]]
    comm = madd(mmul(beta, J), mscale(mmul(J, beta), -1))
    gamma4 = madd(gamma4, mscale([[pmul(Psi4, comm[i][j]) for j in range(2)] for i in range(2)], 1/8))
    # gamma5 = gamma4 - 2 d/dx t(beta4) + (1/2){tr(J beta)}_x J
    trJb = padd(gamma and mtrace(mmul(J, beta)) or pzero(), pzero())
    trJb = mtrace(mmul(J, beta))
    gamma5 = madd(gamma4, mscale(mder(mtrans(beta4)), -2.0))
    dtr = pder(trJb)
    gamma5 = madd(gamma5, [[pzero(), pscale(dtr, -0.5)],[pscale(dtr, 0.5), pzero()]])  # +(1/2)tr'_x J
    # split
    g5s = mscale(madd(gamma5, mtrans(gamma5)), 0.5)
    mu_direct = pscale(mtrace(mmul(J, gamma5)), -0.5)
    mu_formula = padd(pscale(mtrace(mmul(J, gamma)), -0.5),
                      pscale(pder(padd(pscale(trJb, 0.5), pscale(psq, 1/32))), -1.0))
    Psi6 = padd(pprim(pscale(mtrace(mmul(J, gamma)), -0.5)),
                padd(pscale(trJb, -0.5), pscale(psq, -1/32)))
    return Psi4, beta4, gamma4, gamma5, g5s, mu_direct, mu_formula, Psi6, trJb

def rand_compliant(bw=3, scale=0.5):
    beta = mrand(bw, scale, real=True); gamma = mrand(bw, scale, real=True)
    # enforce cond 11: mean tr beta = 0
    m = (beta[0][0].get(0,0) + beta[1][1].get(0,0))/2
    beta[0][0][0] = beta[0][0].get(0,0) - m
    beta[1][1][0] = beta[1][1].get(0,0) - m
    # cond 12: mean (gamma12-gamma21) = 0
    m = (gamma[0][1].get(0,0) - gamma[1][0].get(0,0))/2
    gamma[0][1][0] = gamma[0][1].get(0,0) - m
    gamma[1][0][0] = gamma[1][0].get(0,0) + m
    return beta, gamma

print("=== mu identity check ===")
beta, gamma = rand_compliant()
Psi4, beta4, g4, g5, g5s, mu_d, mu_f, Psi6, trJb = real_gauge(beta, gamma)
diff = padd(mu_d, pscale(mu_f, -1))
print(" max |mu_direct - mu_formula| coeff:", max([abs(v) for v in diff.values()], default=0.0))
dP6 = padd(pder(Psi6), pscale(mu_d, -1))
print(" max |Psi6' - mu| coeff:", max([abs(v) for v in dP6.values()], default=0.0))
# skew part of gamma5 equals mu J
skew = mscale(madd(g5, mscale(mtrans(g5), -1)), 0.5)
err = 0.0
errm = madd(skew, [[pzero(), mu_d],[pscale(mu_d,-1), pzero()]])  # skew - mu*J, J=[[0,-1],[1,0]] -> mu*J = [[0,-mu],[mu,0]]
for i in range(2):
    for j in range(2):
        err = max(err, max([abs(v) for v in errm[i][j].values()], default=0.0))
print(" max |skew(gamma5) - mu J|:", err)

# tr identity: beta4 - t(beta4) = -tr(J beta) J
lhs = madd(beta4, mscale(mtrans(beta4), -1))
rhs = [[pzero(), trJb],[pscale(trJb,-1), pzero()]]  # -tr(Jb) J = [[0, tr],[−tr,0]]
errm = madd(lhs, mscale(rhs,-1)); err = 0
for i in range(2):
    for j in range(2):
        err = max(err, max([abs(v) for v in errm[i][j].values()], default=0.0))
print(" max |(beta4 - t beta4) + tr(J beta) J|:", err)

# ---------- energy estimate ----------
def real_basis(N):
    # columns: complex vectors spanning real subspace, orthonormal wrt Re<.,.>
    dim = 2*(2*N+1)
    cols = []
    for c in range(2):
        v = np.zeros(dim, dtype=complex); v[2*(0+N)+c] = 1.0
        cols.append(v)
    for k in range(1, N+1):
        for c in range(2):
            v = np.zeros(dim, dtype=complex)
            v[2*(k+N)+c] = 1/np.sqrt(2); v[2*(-k+N)+c] = 1/np.sqrt(2)
            cols.append(v)
            v = np.zeros(dim, dtype=complex)
            v[2*(k+N)+c] = 1j/np.sqrt(2); v[2*(-k+N)+c] = -1j/np.sqrt(2)
            cols.append(v)
    return np.array(cols).T

def lam_max_sym_real(Gc, N):
    Q = real_basis(N)
    M = (Q.conj().T @ Gc @ Q).real
    return eigvalsh((M + M.T)/2).max()

def gen_real_terms(beta, gamma, a=1.0):
    # w_t = -(a J d^4 + beta d^2 + gamma d) w ; d^m -> (ik)^m
    J = mconstm(J2)
    return [(mscale(J, -a), lambda k: float(k**4)),
            (beta, lambda k: complex((1j*k)**2)*-1.0),   # -(ik)^2 = k^2... careful below
            ]

print("=== criterion 4 prototype (energy estimate) ===")
def gauged_L6_generator_terms(beta, gamma):
    _,_,_,_, g5s, mu_d, _, _, trJb = real_gauge(beta, gamma)
    J = mconstm(J2)
    # L6 = I dt + J d4 - d (trJb/2) J d + g5s d  ==> expand: -d m J d = -(m J) d^2 - m' J d
    m = pscale(trJb, 0.5)
    beta_eff = [[pzero(), m],[pscale(m,-1), pzero()]]        # -(m)J = [[0,m],[-m,0]]
    gamma_eff = madd(g5s, [[pzero(), pder(m)],[pscale(pder(m),-1), pzero()]])  # -m' J
    return beta_eff, gamma_eff, g5s

def G_of_realsys(beta, gamma, N, a=1.0, theta3=0.0):
    # generator G = -(a J d^4 + theta3 I d^3 + beta d^2 + gamma d), d^m -> (ik)^m
    J = mconstm(J2); I2m = mconstm([[1,0],[0,1]])
    terms = [(mscale(J, -a), lambda k: float(k**4)),
             (mscale(I2m, -theta3), lambda k: complex((1j*k)**3)),
             (mscale(beta, -1.0), lambda k: complex((1j*k)**2)),
             (mscale(gamma, -1.0), lambda k: complex(1j*k))]
    return galerkin(terms, N)

for trial in range(3):
    beta, gamma = rand_compliant()
    be, ge, g5s = gauged_L6_generator_terms(beta, gamma)
    vals = [lam_max_sym_real(G_of_realsys(be, ge, N), N) for N in (16, 32, 64)]
    print(f" compliant trial{trial}: lam_max sym at N=16/32/64: {vals[0]:.6f} {vals[1]:.6f} {vals[2]:.6f} band={max(vals)/max(min(vals),1e-300):.3f}")
# violating beta = I
bI = mconstm([[1,0],[0,1]]); g0 = mzero()
vals = [lam_max_sym_real(G_of_realsys(bI, g0, N), N) for N in (16, 64)]
print(f" violating beta=I: N=16 -> {vals[0]:.3f}, N=64 -> {vals[1]:.3f}, ratio {vals[1]/vals[0]:.2f}")
