from proto import *
from proto2 import G_of_realsys, rand_compliant

# M L M^-1 check: formula-built complex image vs numerically conjugated real generator
Mc = np.array([[1, 1j],[1, -1j]])
Mi = 0.5*np.array([[1,1],[-1j,1j]])

def btilde_ctilde(beta, gamma):
    b11,b12,b21,b22 = beta[0][0],beta[0][1],beta[1][0],beta[1][1]
    g11,g12,g21,g22 = gamma[0][0],gamma[0][1],gamma[1][0],gamma[1][1]
    tb = [[padd(padd(b12,pscale(b21,-1)), pscale(padd(b11,b22),1j)),
           padd(pscale(padd(b12,b21),-1), pscale(padd(b11,pscale(b22,-1)),1j))],
          [padd(padd(b12,b21), pscale(padd(b11,pscale(b22,-1)),1j)),
           padd(pscale(padd(b12,pscale(b21,-1)),-1), pscale(padd(b11,b22),1j))]]
    tc = [[padd(padd(g11,g22), pscale(padd(g12,pscale(g21,-1)),-1j)),
           padd(padd(g11,pscale(g22,-1)), pscale(padd(g12,g21),1j))],
          [padd(padd(g11,pscale(g22,-1)), pscale(padd(g12,g21),-1j)),
           padd(padd(g11,g22), pscale(padd(g12,pscale(g21,-1)),1j))]]
    return mscale(tb, 0.5), mscale(tc, 0.5)

beta, gamma = rand_compliant()
Bt, Ct = btilde_ctilde(beta, gamma)
N = 8
# complex system generator -iP with P = E k^4 + Bt k^2 + Ct k
E = mconstm(E2)
terms = [(mscale(E,-1j), lambda k: float(k**4)), (mscale(Bt,-1j), lambda k: float(k**2)), (mscale(Ct,-1j), lambda k: float(k))]
Gc = galerkin(terms, N)
# real generator conjugated: M G_real M^-1 (blockwise per mode pair)
Gr = G_of_realsys(beta, gamma, N)
dim = 2*(2*N+1)
MM = np.zeros((dim,dim),dtype=complex); MMi = np.zeros((dim,dim),dtype=complex)
for m in range(2*N+1):
    MM[2*m:2*m+2, 2*m:2*m+2] = Mc
    MMi[2*m:2*m+2, 2*m:2*m+2] = Mi
print("M-conjugation formula check:", np.abs(MM@Gr@MMi - Gc).max())
