"""Independent evaluation of the hand-derived expected values frozen into the
C++ unit tests. Uses exact rationals / mpmath so nothing here shares code with
the library."""
from fractions import Fraction as F
import mpmath as mp

mp.mp.dps = 40

# tf-idf: 3 * (1 + ln(100/10))
print("tfidf", mp.mpf(3) * (1 + mp.log(10)))

# existing-cluster score on the one-cluster fixture
prior = F(1, 1 + F(1, 2) * 2)              # m_z / (D - 1 + alpha D), D=2, alpha=.5
terms = F(1, 10) * F(1, 10)                # ICF = 0 -> (0 + beta + 0) per term
denom = (3 + F(2, 10)) * (3 + F(2, 10) + 1)
sem = 1 + (F(2, 3) + F(1, 3))
score = prior * terms / denom * sem
print("osdm_fixture", score, float(score), mp.log(mp.mpf(score.numerator) / score.denominator))

# ES variant on the same fixture: (2+b)(1+b) numerators
es = prior * (2 + F(1, 10)) * (1 + F(1, 10)) / denom * sem
print("osgm_es_fixture", float(es), mp.log(mp.mpf(es.numerator) / es.denominator))

# NMI of [[3,1],[1,3]] by enumerating documents
rows = [[3, 1], [1, 3]]
N = sum(map(sum, rows))
nc = [sum(r) for r in rows]
nz = [sum(rows[i][j] for i in range(2)) for j in range(2)]
mi = sum(mp.mpf(rows[i][j]) / N * mp.log(mp.mpf(N * rows[i][j]) / (nc[i] * nz[j]))
         for i in range(2) for j in range(2))
hc = -sum(mp.mpf(c) / N * mp.log(mp.mpf(c) / N) for c in nc)
hz = -sum(mp.mpf(c) / N * mp.log(mp.mpf(c) / N) for c in nz)
print("nmi_3113", mi / mp.sqrt(hc * hz))
hcz = -sum(mp.mpf(rows[i][j]) / N * mp.log(mp.mpf(rows[i][j]) / nz[j]) for i in range(2) for j in range(2))
print("homogeneity_3113", 1 - hcz / hc)

# recency of 'gaga' (ticks 1,2,8; m_z = 9), and a term seen once at tick 1 of a 100-doc cluster
tri = lambda t: F(t * t + t, 2)
print("recency_gaga", float(F(1100) / (tri(9) - tri(1) + 1)))
print("recency_once", float(F(100) / (tri(100) - tri(1) + 1)))

# word specificity, delta = 1, ratio 1
print("specificity_r1", 1 + mp.tanh(-2) + 1)

# decay 2^-(1e-6 * 2e6)
print("decay", mp.power(2, -2))
print("osdm_delete_ticks", mp.log(10**6, 2) / mp.mpf("6e-6"))
