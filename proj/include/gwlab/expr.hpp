#pragma once

#include <string>

#include "gwlab/laurent.hpp"

namespace gwlab {

// Field grammar: Q | F<p> followed by [sqrt <elem>] steps.
TowerPtr parse_field(const std::string& s);

// Algebra grammar: components separated by `x`, each a field extending base.
EtaleAlgebra parse_algebra(const std::string& s, const TowerPtr& base);

// Element grammar: rationals (1/2), `sqrt` (top step), `sqrtN` (step N),
// +, -, *, /, parentheses.
FieldElem parse_elem(const std::string& s, const TowerPtr& t);

// GW / group-ring expressions: diagonal forms `<1, 2, -5>`, `H`, integers,
// `tr(<algebra>)`, `exp(X; Y)`, monomials `<t1>`, `P(m)`, +, -, *.
// With vars = 0 the result is a constant.
GRElem parse_gr(const std::string& s, const TowerPtr& t, int vars);
GWElem parse_gw(const std::string& s, const TowerPtr& t);

std::string print_gw(const GWElem& x);
std::string print_gr(const GRElem& x);

}  // namespace gwlab
