#pragma once

// Reference cylinder-function values frozen from a 50-digit arbitrary
// precision evaluation (generated by oracle/gen_bessel_reference.py before
// the implementation was written; kept independent of it).

namespace bessel_reference {

struct Point {
    int order;
    double x;
    double value;
};

inline constexpr Point kJ[] = {
    {0, 1.5, 0.51182767173591813},
    {1, 2.5, 0.49709410246427404},
    {2, 0.75, 0.067073997299650557},
    {5, 3.0, 0.043028434877047584},
    {10, 12.3, 0.29033357334989737},
    {46, 60.0, 0.10407773550276804},
    {46, 40.0, 0.0092584873878004078},
    {46, 46.1, 0.12797130737830719},
    {100, 150.7, -0.049983709332079584},
    {100, 60.0, 4.7832744078781004e-15},
    {0, 120.7, 0.062549034919434445},
    {7, 193.3, 0.048416594524600729},
    {1, 14.0, 0.13337515469879325},
    {23, 23.0, 0.15725554198944121},
    {46, 23.672, 1.9431261786324288e-10},
    {3, 199.5, 0.041157455967513962},
};

inline constexpr Point kY[] = {
    {0, 1.0, 0.088256964215676958},
    {46, 40.0, -1.5413747501273768},
    {0, 0.5, -0.44451873350670656},
    {1, 3.7, 0.41667437268380749},
    {10, 15.2, 0.20160159343397563},
    {46, 50.5, 0.073486006066762966},
    {100, 130.9, 0.071673162559406409},
    {46, 23.672, -41540174.562747666},
    {2, 200.0, 0.054418793495621811},
    {0, 187.4, -0.055491725241259405},
    {5, 1.25, -88.474252441880399},
    {46, 100.0, 0.0030892491433335129},
};

}  // namespace bessel_reference
