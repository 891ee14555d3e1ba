#pragma once

#include <array>

namespace wcsl::cli {

// A(2, 3) as printed, 3 significant figures, row-major.
inline constexpr std::array<double, 81> kTableA23{
    0.340, 0.0179, 0.00490, 0.321, 0.0284, 0.00919, 0.274, 0.0360, 0.0139,
    0.0179, 0.00490, 0.00202, 0.00919, 0.00414, 0.00222, 0.00405, 0.00256, 0.00173,
    0.00490, 0.00202, 0.00102, 0.00222, 0.00133, 0.000857, 0.000899, 0.000679, 0.000526,
    0.321, 0.00919, 0.00222, 0.340, 0.0179, 0.00490, 0.321, 0.0284, 0.00919,
    0.0284, 0.00414, 0.00133, 0.0179, 0.00490, 0.00202, 0.00919, 0.00414, 0.00222,
    0.00919, 0.00222, 0.000857, 0.00490, 0.00202, 0.00102, 0.00222, 0.00133, 0.000857,
    0.274, 0.00405, 0.000899, 0.321, 0.00919, 0.00222, 0.340, 0.0179, 0.00490,
    0.0360, 0.00256, 0.000679, 0.0284, 0.00414, 0.00133, 0.0179, 0.00490, 0.00202,
    0.0139, 0.00173, 0.000526, 0.00919, 0.00222, 0.000857, 0.00490, 0.00202, 0.00102,
};

// lambda_max(F_K(0)) for K = 1..60 at M = 50, 7 decimals as printed.
inline constexpr std::array<double, 60> kTableFourier{
    3.1105201, 3.1330806, 3.1377294, 3.1394026, 3.1401857, 3.1406136,
    3.1408725, 3.1410408, 3.1411564, 3.1412391, 3.1413004, 3.1413470,
    3.1413833, 3.1414121, 3.1414354, 3.1414544, 3.1414702, 3.1414834,
    3.1414946, 3.1415042, 3.1415124, 3.1415195, 3.1415258, 3.1415312,
    3.1415360, 3.1415403, 3.1415441, 3.1415475, 3.1415506, 3.1415534,
    3.1415559, 3.1415581, 3.1415602, 3.1415621, 3.1415638, 3.1415654,
    3.1415669, 3.1415682, 3.1415694, 3.1415706, 3.1415717, 3.1415727,
    3.1415736, 3.1415745, 3.1415753, 3.141576, 3.1415768, 3.1415774,
    3.1415780, 3.1415786, 3.1415792, 3.1415797, 3.1415802, 3.1415807,
    3.1415811, 3.1415815, 3.1415819, 3.1415823, 3.1415826, 3.1415830,
};

}  // namespace wcsl::cli
