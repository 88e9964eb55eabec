from proto import *
from proto2 import G_of_realsys, rand_compliant, real_gauge, gauged_L6_generator_terms, lam_max_sym_real, real_basis

print("=== criterion 5: growth dichotomy ===")
# complex system generator: G = -i P, P symbol in xi=k
def G_complex(A, B, C, D, N):
    E = mconstm(E2)
    terms = [(mscale(E,-1j), lambda k: float(k**4)), (mscale(A,-1j), lambda k: float(k**3)),
             (mscale(B,-1j), lambda k: float(k**2)), (mscale(C,-1j), lambda k: float(k)),
             (mscale(D,-1j), lambda k: 1.0)]
    return galerkin(terms, N)

alpha, t = 0.01, 0.01
A = mzero(); A[0][0] = pconst(1j*alpha)
G = G_complex(A, mzero(), mzero(), mzero(), 16)
nrm = opnorm(expm(t*G))
oracle = max(np.exp(alpha*t*k**3) for k in range(-16,17))
print(f" ||exp(tG_16)|| = {nrm:.6f}, oracle e^(a t k^3)max = {oracle:.6f}, rel diff {abs(nrm-oracle)/oracle:.2e}")
# compliant control: zero system
G0 = G_complex(mzero(), mzero(), mzero(), mzero(), 16)
print(f" zero system norm: {opnorm(expm(t*G0)):.8f}")
# ladder boundedness for a compliant random real system
beta, gamma = rand_compliant()
norms = [opnorm(expm(0.05*G_of_realsys(beta, gamma, N))) for N in (8,16,32)]
print(" compliant real sys ladder:", [f"{x:.4f}" for x in norms], "max/min", max(norms)/min(norms))

print("=== criterion 8: third-order innocuousness ===")
# constant-coefficient frame-like corrected system: beta1 = b0*J const, gamma1 = c1*I + c2*J const
a_, th = 1.0, 1.0
bJ = mscale(mconstm(J2), -1.7)      # beta1
gI = madd(mscale(mconstm(I2), 4*a_*th**3), mscale(mconstm(J2), 0.6))
N = 32; t8 = 0.02
Gw = G_of_realsys(bJ, gI, N, a=-a_, theta3=-a_*th)   # principal -a J d^4, third -a*theta I d^3
Gwo = G_of_realsys(bJ, gI, N, a=-a_, theta3=0.0)
print(f" const coeff: with={opnorm(expm(t8*Gw)):.12f} without={opnorm(expm(t8*Gwo)):.12f} diff={abs(opnorm(expm(t8*Gw))-opnorm(expm(t8*Gwo))):.2e}")
# x-dependent beta1: add cos x symmetric part
bX = madd(bJ, [[{1:0.25,-1:0.25}, pzero()],[pzero(), {1:-0.25,-1:-0.25}]])
GwX = G_of_realsys(bX, gI, N, a=-a_, theta3=-a_*th)
GwoX = G_of_realsys(bX, gI, N, a=-a_, theta3=0.0)
print(f" x-dep coeff:  with={opnorm(expm(t8*GwX)):.12f} without={opnorm(expm(t8*GwoX)):.12f} diff={abs(opnorm(expm(t8*GwX))-opnorm(expm(t8*GwoX))):.2e}")

print("=== reality of gauge operators (criterion 9 ingredient) ===")
def p_l_mult(l, r, N):
    idm = mconstm(I2)
    return galerkin([(idm, lambda k: phi_r(r,k)/ (1j*k)**l if k != 0 else 0.0)], N)
N = 16
beta, gamma = rand_compliant()
Psi4, beta4, g4, g5, g5s, mu_d, mu_f, Psi6, trJb = real_gauge(beta, gamma)
J = mconstm(J2)
lam4 = galerkin([(mscale([[Psi4 if i==j else pzero() for j in range(2)] for i in range(2)],1.0), lambda k: 0.0)], N)  # placeholder
def mk_lam(coefmat, l, r, N, scale):
    return galerkin([(mscale(coefmat, scale), lambda k: phi_r(r,k)/(1j*k)**l if k != 0 else 0.0)], N)
P4 = [[pmul(Psi4, J[i][j]) for j in range(2)] for i in range(2)]
L4 = np.eye(2*(2*N+1)) - mk_lam(P4, 1, 8, N, 1/8)
B4J = mmul(beta4, J)
L5 = np.eye(2*(2*N+1)) + mk_lam(B4J, 2, 8, N, 0.5)
P6 = [[Psi6 if i==j else pzero() for j in range(2)] for i in range(2)]
L6 = np.eye(2*(2*N+1)) + mk_lam(P6, 2, 8, N, 0.25)
Q = real_basis(N)
w = Q @ rng.standard_normal(Q.shape[1])   # random real field
for nm, L in (("L4",L4),("L5",L5),("L6",L6)):
    v = L @ w
    # imag part of field: v - conj-symmetric reflection
    dim = 2*(2*N+1)
    refl = np.zeros(dim, dtype=complex)
    for k in range(-N, N+1):
        for c in range(2):
            refl[2*(k+N)+c] = np.conj(v[2*(-k+N)+c])
    print(f" {nm}: max |v - refl(v)| = {np.abs(v-refl).max():.2e}")
