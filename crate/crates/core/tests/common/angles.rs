/// Rz angles, `THETA[i][k]` for qubit `i + 1` of circuit `k + 1`.
pub const THETA: [[f64; 9]; 6] = [
    [-0.619, 0.190, -0.513, -0.619, -0.867, -1.667, 0.400, -1.133, 0.476],
    [0.667, -1.429, -0.308, 0.667, 0.133, -0.444, -1.067, -3.000, -0.857],
    [-1.095, -0.714, -1.436, -1.095, 0.667, -0.556, -0.867, -1.267, -1.143],
    [-0.095, -1.381, -0.205, -0.095, 0.067, 0.333, -0.933, -2.067, -0.095],
    [-1.714, -1.571, -1.026, -1.714, -0.267, -1.444, -0.867, -1.200, -0.190],
    [-0.952, -2.095, -0.308, -0.952, -0.733, 0.444, -0.067, -1.067, -0.190],
];

/// ZZ angles in the order (1,2), (1,3), ..., (5,6).
pub const CHI: [[f64; 9]; 15] = [
    [-0.095, -0.190, -0.026, -0.095, 0.300, 0.333, -0.233, 0.233, -0.286],
    [0.048, 0.095, 0.128, 0.048, -0.233, 0.333, -0.133, 0.067, -0.190],
    [0.024, -0.048, 0.128, 0.024, -0.200, 0.000, -0.033, 0.033, -0.238],
    [0.048, -0.024, 0.103, 0.048, -0.067, 0.278, 0.000, 0.167, -0.238],
    [0.095, -0.095, -0.128, 0.095, 0.067, -0.389, -0.133, -0.133, 0.238],
    [-0.095, -0.167, -0.231, -0.095, 0.100, -0.167, 0.200, 0.200, 0.333],
    [0.048, 0.190, -0.205, 0.048, -0.233, 0.056, 0.067, 0.233, -0.286],
    [-0.095, 0.167, 0.077, -0.095, -0.200, 0.056, 0.167, 0.167, 0.048],
    [-0.190, 0.190, 0.077, -0.190, -0.200, -0.389, 0.000, 0.167, 0.048],
    [-0.095, -0.048, 0.333, -0.095, -0.033, -0.333, -0.167, -0.167, -0.095],
    [0.214, 0.071, 0.179, 0.214, -0.167, -0.278, -0.133, -0.133, -0.190],
    [0.024, 0.071, -0.128, 0.024, -0.200, 0.222, 0.133, 0.133, 0.143],
    [0.000, -0.119, -0.128, 0.000, -0.167, 0.000, 0.333, 0.333, -0.286],
    [-0.143, 0.333, -0.179, -0.143, -0.100, -0.389, -0.233, -0.067, -0.048],
    [0.214, 0.119, -0.128, 0.214, 0.000, -0.444, -0.100, -0.267, -0.286],
];
