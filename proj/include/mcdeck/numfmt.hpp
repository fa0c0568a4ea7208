#ifndef MCDECK_NUMFMT_HPP
#define MCDECK_NUMFMT_HPP

#include <string>

namespace mcdeck {

// Shortest text that parses back to exactly the same double ("400", "0.5").
std::string fmt_shortest(double v);

// Shortest round-trip, but always spelled as a float ("400.0", "0.5"),
// matching the look of the provenance header lines.
std::string fmt_pyfloat(double v);

// %.{sig}g with a significant-digit count (tr cards use 15).
std::string fmt_sig(double v, int sig);

// Parses an MCNP numeric token; also accepts the FORTRAN implied-exponent
// form ("1.205-3" == 1.205e-3). Throws SyntaxError when not a number.
double parse_number(const std::string& token);
bool try_parse_number(const std::string& token, double& out);
bool try_parse_int(const std::string& token, int& out);

} // namespace mcdeck

#endif
