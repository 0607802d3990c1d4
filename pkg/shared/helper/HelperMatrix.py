"""Small dense integer matrices stored as tuples of row tuples.

Matrices act on column vectors of weight coordinates. All functions are
pure; the tuple representation keeps matrices hashable.
"""

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))


def mat_mul(left: Matrix, right: Matrix) -> Matrix:
    columns = list(zip(*right))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in columns)
        for row in left
    )


def mat_vec(matrix: Matrix, vector: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, vector)) for row in matrix)


def determinant(matrix: Matrix) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    rows = [list(r) for r in matrix]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if rows[r][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // previous
        previous = rows[k][k]
    return sign * rows[n - 1][n - 1] if n else 1


def mat_pow(matrix: Matrix, exponent: int) -> Matrix:
    result = identity(len(matrix))
    for _ in range(exponent):
        result = mat_mul(result, matrix)
    return result


def is_identity(matrix: Matrix) -> bool:
    return matrix == identity(len(matrix))


def left_reflect(matrix: Matrix, i: int, cartan_row: Vector) -> Matrix:
    """Return S_i · matrix for the simple reflection S_i with Cartan row c_i.

    Only the entries of S_i in column i differ from the identity
    (S[a][i] = δ_ai − c_ia), so every row a picks up −c_ia times row i.
    """
    pivot = matrix[i]
    return tuple(
        row if cartan_row[a] == 0 else tuple(x - cartan_row[a] * p for x, p in zip(row, pivot))
        for a, row in enumerate(matrix)
    )


def format_matrix(matrix: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in matrix) + "]"
