# Dense polynomials over Z/n as coefficient lists, low degree first.
# Used for prime-field moduli and for the Hensel lift in the Witt ring.


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, n):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % n
    return trim(out)


def sub(a, b, n):
    return add(a, [(-c) % n for c in b], n)


def mul(a, b, n):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % n for c in out])


def divmod_(a, b, n):
    """Division by b whose leading coefficient is a unit mod n."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, n)
    r = [c % n for c in a]
    db = len(b) - 1
    quot = [0] * max(len(r) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % n
        if c:
            quot[k - db] = c
            for i, bc in enumerate(b):
                r[k - db + i] = (r[k - db + i] - c * bc) % n
    return trim(quot), trim(r[:db])


def mod(a, b, n):
    return divmod_(a, b, n)[1]


def powmod(a, e, m, n):
    result = [1]
    base = mod(a, m, n)
    while e:
        if e & 1:
            result = mod(mul(result, base, n), m, n)
        base = mod(mul(base, base, n), m, n)
        e >>= 1
    return result


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def xgcd(a, b, p):
    """Return (g, s, t) with s*a + t*b = g monic, over F_p."""
    r0, r1 = trim(a), trim(b)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


def prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_fp(f, p):
    """Rabin's test over the prime field F_p."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^k) mod f for k = 1..n
    frob = [x]
    for _ in range(n):
        frob.append(powmod(frob[-1], p, f, p))
    if frob[n] != x:
        return False
    for ell in prime_factors(n):
        h = sub(frob[n // ell], x, p)
        if len(gcd(f, h, p)) > 1:
            return False
    return True


def least_irreducible(p, r):
    """Least monic irreducible of degree r over F_p by code sum c_i p^i."""
    for code in range(p**r):
        f = [(code // p**i) % p for i in range(r)] + [1]
        if is_irreducible_fp(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")
