"""Factorial moments written out as kappa-polynomials, transcribed by hand.

Each entry maps n to a function of (kappa_1..kappa_6) returning the list of
coefficients by power of lambda.
"""

from kpoisson.exact import binomial


def kappas(k, upto=6):
    return [binomial(k + 1, j + 1) for j in range(1, upto + 1)]


def general_k(n, kap):
    k1, k2, k3, k4, k5, k6 = kap
    table = {
        1: [0, k1],
        2: [0, 2 * k2, k1**2],
        3: [0, 6 * k3, 6 * k1 * k2, k1**3],
        4: [0, 24 * k4, 12 * k2**2 + 24 * k1 * k3, 12 * k1**2 * k2, k1**4],
        5: [
            0,
            120 * k5,
            120 * k1 * k4 + 120 * k2 * k3,
            60 * k1 * k2**2 + 60 * k1**2 * k3,
            20 * k1**3 * k2,
            k1**5,
        ],
        6: [
            0,
            720 * k6,
            720 * k1 * k5 + 720 * k2 * k4 + 360 * k3**2,
            360 * k1**2 * k4 + 120 * k2**3 + 720 * k1 * k2 * k3,
            180 * k1**2 * k2**2 + 120 * k1**3 * k3,
            30 * k1**4 * k2,
            k1**6,
        ],
    }
    return table[n]


# k = 2 with kappa_1 = 3, kappa_2 = 1
ORDER2 = {
    2: [0, 2, 9],
    3: [0, 0, 18, 27],
    4: [0, 0, 12, 108, 81],
    5: [0, 0, 0, 180, 540, 243],
    6: [0, 0, 0, 120, 1620, 2430, 729],
}

# prefactors n!/prod(n_j!) of the kappa-monomials for k = 2
ORDER2_PREFACTORS = {
    1: [1],
    2: [1, 2],
    3: [1, 6],
    4: [1, 12, 12],
    5: [1, 20, 60],
    6: [1, 30, 180, 120],
}
