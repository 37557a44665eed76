#include "warpqm/serialize.hpp"

#include "warpqm/errors.hpp"
#include "warpqm/parser.hpp"

namespace warpqm {

Json rational_json(const Rational& q) {
    return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const Json& j) {
    try {
        Rational q(Integer(j.at("num").get<std::string>()), Integer(j.at("den").get<std::string>()));
        if (sgn(q.get_den()) == 0) throw InvalidArgument("zero denominator in JSON rational");
        q.canonicalize();
        return q;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed JSON rational: ") + ex.what());
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("malformed integer in JSON rational");
    }
}

Json complex_json(const Complex& c) { return Json{{"re", rational_json(c.re)}, {"im", rational_json(c.im)}}; }

Complex complex_from_json(const Json& j) { return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))}; }

namespace {

Json exponent_json(const Exponent& e) { return rational_json(e.to_rational()); }

Json term_json(const Monomial& m, const Complex& c, const MomentumMonomial& k) {
    Json constants = Json::object();
    for (const auto& [name, p] : m.constants.factors()) constants[name] = p;
    return Json{{"coefficient", complex_json(c)},
                {"constants", constants},
                {"x", Json::array({m.x[0], m.x[1], m.x[2]})},
                {"r", exponent_json(m.r)},
                {"rho", exponent_json(m.rho)},
                {"p", Json::array({k.k[0], k.k[1], k.k[2]})}};
}

}  // namespace

Json to_json(const OperatorExpr& a) {
    Json terms = Json::array();
    for (const auto& [k, f] : a.terms()) {
        for (const auto& [m, c] : f.terms()) terms.push_back(term_json(m, c, k));
    }
    return Json{{"text", to_string(a)}, {"terms", terms}};
}

Json to_json(const CoordFunction& f) { return to_json(OperatorExpr(f)); }

OperatorExpr operator_from_json(const Json& j) {
    try {
        OperatorExpr out;
        for (const auto& t : j.at("terms")) {
            Monomial m;
            for (const auto& [name, p] : t.at("constants").items()) {
                m.constants = m.constants * ConstMonomial::symbol(name, p.get<int>());
            }
            MomentumMonomial k;
            for (int a = 0; a < kDim; ++a) {
                m.x[a] = t.at("x").at(a).get<int>();
                k.k[a] = t.at("p").at(a).get<int>();
                if (m.x[a] < 0 || k.k[a] < 0) throw InvalidArgument("negative polynomial exponent in JSON term");
            }
            m.r = Exponent::from_rational(rational_from_json(t.at("r")));
            m.rho = Exponent::from_rational(rational_from_json(t.at("rho")));
            out += OperatorExpr::term(CoordFunction::term(complex_from_json(t.at("coefficient")), m), k);
        }
        return out;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed JSON expression: ") + ex.what());
    }
}

CoordFunction function_from_json(const Json& j) {
    const OperatorExpr e = operator_from_json(j);
    if (e.momentum_degree() > 0) throw InvalidArgument("JSON function contains momentum factors");
    return e.coordinate_part();
}

}  // namespace warpqm
