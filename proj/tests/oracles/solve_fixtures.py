"""Reference solutions for the C++ test fixtures.

Solves the penalized problems with cvxpy, then polishes each solution by
fixing the active pattern and solving the stationarity equations exactly.
Prints values ready to paste into the tests.
"""
import numpy as np
import cvxpy as cp

rng = np.random.default_rng(20240607)
n, p = 12, 4
X = np.round(rng.normal(size=(n, p)), 3)
beta = np.array([1.5, 0.0, -0.8, 0.0])
y = np.round(X @ beta + 0.3 * rng.normal(size=n), 3)
tilde = np.array([1.2, 0.4, 0.0, 0.0])


def solve(lam, alpha, tilde):
    b = cp.Variable(p)
    obj = cp.sum_squares(y - X @ b) / (2 * n) + lam * (alpha * cp.norm1(b) + (1 - alpha) * cp.norm1(b - tilde))
    cp.Problem(cp.Minimize(obj)).solve(solver="CLARABEL", tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)
    return polish(np.array(b.value), lam, alpha, tilde)


def polish(b, lam, alpha, tilde, eps=1e-6):
    fixed = {}
    free = []
    for j in range(p):
        if abs(b[j]) < eps:
            fixed[j] = 0.0
        elif abs(b[j] - tilde[j]) < eps:
            fixed[j] = tilde[j]
        else:
            free.append(j)
    out = np.zeros(p)
    for j, v in fixed.items():
        out[j] = v
    if free:
        s = np.array([alpha * np.sign(b[j]) + (1 - alpha) * np.sign(b[j] - tilde[j]) for j in free])
        fx = [j for j in range(p) if j not in free]
        r = y - X[:, fx] @ out[fx]
        G = X[:, free].T @ X[:, free] / n
        rhs = X[:, free].T @ r / n - lam * s
        out[free] = np.linalg.solve(G, rhs)
    grad = -X.T @ (y - X @ out) / n
    for j in range(p):
        lo1, hi1 = (np.sign(out[j]),) * 2 if out[j] != 0 else (-1, 1)
        d = out[j] - tilde[j]
        lo2, hi2 = (np.sign(d),) * 2 if d != 0 else (-1, 1)
        lo = lam * (alpha * lo1 + (1 - alpha) * lo2)
        hi = lam * (alpha * hi1 + (1 - alpha) * hi2)
        assert lo - 1e-12 <= -grad[j] <= hi + 1e-12, (j, lo, -grad[j], hi)
    return out


def fmt(v):
    return "{" + ", ".join(repr(float(x)) for x in v) + "}"


if __name__ == "__main__":
    with open("small.csv", "w") as f:
        f.write("x1,x2,x3,x4,y\n")
        for i in range(n):
            f.write(",".join(repr(float(v)) for v in X[i]) + "," + repr(float(y[i])) + "\n")
    print("lambda_max alpha=1:", repr(float(np.max(np.abs(X.T @ y)) / n)))
    for lam, alpha in [(0.05, 1.0), (0.2, 1.0), (0.05, 0.5), (0.2, 0.25), (0.2, 0.0), (0.5, 0.75), (0.0, 0.5)]:
        print(lam, alpha, fmt(solve(lam, alpha, tilde)))

    # Logistic loss on the sign of y; no polishing, so compare at ~1e-6.
    labels = (y > 0).astype(float)
    for lam, alpha in [(0.02, 1.0), (0.05, 0.5), (0.05, 0.0)]:
        b = cp.Variable(p)
        margin = cp.multiply(2 * labels - 1, X @ b)
        obj = cp.sum(cp.logistic(-margin)) / n + lam * (alpha * cp.norm1(b) + (1 - alpha) * cp.norm1(b - tilde))
        cp.Problem(cp.Minimize(obj)).solve(solver="CLARABEL", tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)
        print("logistic", lam, alpha, fmt(b.value), "objective", repr(float(obj.value)))
    print("labels", fmt(labels))
