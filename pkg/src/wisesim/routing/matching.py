from collections import deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from wisesim.routing.api import RoutingError


def column_assignment(target_rows: np.ndarray) -> np.ndarray:
    """
    Spreads the qubits of every row over the columns so that no column receives two qubits
    bound for the same target row.

    target_rows is an R x L array: entry (r, x) is the target row of the x-th qubit currently in
    row r, so each row value in [0, R) must appear exactly L times. The result has the same shape
    and holds the column given to each qubit; within a row the columns are a permutation of
    [0, L). The current-row / target-row multigraph is L-regular, so it splits into L perfect
    matchings, one per column.
    """
    target_rows = np.asarray(target_rows, dtype=np.int64)
    if target_rows.ndim != 2:
        raise RoutingError(f'target rows must form a 2D array, got shape {target_rows.shape}')
    n_rows, row_length = target_rows.shape
    if n_rows == 0 or row_length == 0:
        return np.zeros_like(target_rows)
    if target_rows.min() < 0 or target_rows.max() >= n_rows:
        raise RoutingError(f'target rows must lie in [0, {n_rows})')
    counts = np.bincount(target_rows.reshape(-1), minlength=n_rows)
    if not np.all(counts == row_length):
        bad = int(np.flatnonzero(counts != row_length)[0])
        raise RoutingError(f'target row {bad} receives {counts[bad]} qubits, expected {row_length}: '
                           f'not the row image of a permutation')

    multiplicity = np.zeros((n_rows, n_rows), dtype=np.int64)
    np.add.at(multiplicity, (np.repeat(np.arange(n_rows), row_length), target_rows.reshape(-1)), 1)
    queues = [[deque() for _ in range(n_rows)] for _ in range(n_rows)]
    for row in range(n_rows):
        for entry in range(row_length):
            queues[row][target_rows[row, entry]].append(entry)

    assignment = np.full(target_rows.shape, -1, dtype=np.int64)
    for column in range(row_length):
        graph = csr_matrix((multiplicity > 0).astype(np.int8))
        matched = maximum_bipartite_matching(graph, perm_type='column')
        if np.any(matched < 0):
            raise RoutingError(f'no perfect matching for column {column}')
        for row in range(n_rows):
            target = matched[row]
            assignment[row, queues[row][target].popleft()] = column
            multiplicity[row, target] -= 1
    return assignment


def is_valid_assignment(target_rows: np.ndarray, assignment: np.ndarray) -> bool:
    target_rows = np.asarray(target_rows)
    assignment = np.asarray(assignment)
    n_rows, row_length = target_rows.shape
    expected = np.arange(row_length)
    for row in range(n_rows):
        if not np.array_equal(np.sort(assignment[row]), expected):
            return False
    for column in range(row_length):
        targets = target_rows[assignment == column]
        if len(np.unique(targets)) != n_rows:
            return False
    return True
