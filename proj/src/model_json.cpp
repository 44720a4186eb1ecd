#include "levystop/model_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace levystop {

LevyModel model_from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidParameter(std::string("model JSON parse error: ") + e.what());
    }
    LevyModel m;
    m.a = j.value("a", 0.0);
    m.b = j.value("b", 0.0);
    m.lambda = j.value("lambda", 0.0);
    m.alpha = j.value("alpha", 0.0);
    m.mu = j.value("mu", 0.0);
    m.beta = j.value("beta", 0.0);
    return validate(m);
}

LevyModel model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

}  // namespace levystop
