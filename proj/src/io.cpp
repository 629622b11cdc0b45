#include "qsphere/io.hpp"

#include <sstream>

namespace qsphere {

using nlohmann::json;

json to_json(const QScalar& x) {
    json arr = json::array();
    for (const auto& [e, c] : x.terms()) {
        std::ostringstream os;
        os << c;
        arr.push_back(json::array({e, os.str()}));
    }
    return arr;
}

json to_json(const QRat& x) { return json{{"num", to_json(x.num())}, {"den", to_json(x.den())}}; }

json to_json(Signature sig) { return json{{"ell", sig.ell}, {"N", sig.N}}; }

namespace {

json coeff_json(const QScalar& c) {
    return json{{"num", to_json(c)}, {"den", to_json(QScalar(1))}};
}

template <typename Terms, typename WordFn>
json term_array(const Terms& terms, WordFn&& word_of) {
    json arr = json::array();
    for (const auto& [key, c] : terms)
        arr.push_back(json{{"coeff", coeff_json(c)}, {"word", word_of(key)}});
    return arr;
}

}  // namespace

json to_json(const NCPoly& x) {
    return term_array(x.coeffs(), [](const SphereMonomial& mono) {
        json w = json::array();
        for (const Letter& l : mono.word()) w.push_back(l.str());
        return w;
    });
}

json to_json(const APoly& x) {
    return term_array(x.coeffs(), [](const std::vector<uint32_t>& m) {
        json w = json::array();
        for (size_t j = 0; j < m.size(); ++j)
            for (uint32_t k = 0; k < m[j]; ++k) w.push_back("A" + std::to_string(j + 1));
        return w;
    });
}

json to_json(const UPoly& x) {
    return term_array(x.coeffs(), [](const UWord& word) {
        json w = json::array();
        for (const UIndex& u : word) w.push_back(u.str());
        return w;
    });
}

}  // namespace qsphere
