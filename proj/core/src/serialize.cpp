#include "tiltkit/serialize.hpp"

namespace tiltkit {

ojson elem_to_json(const RingElem& a) {
    const RingCtx& c = *a.ctx();
    if (c.kind == RingKind::PerfSeries) {
        ojson pairs = ojson::array();
        for (uint32_t i = 0; i < c.deg; ++i)
            if (a.coeffs()[i] != 0) pairs.push_back({i, a.coeffs()[i]});
        return pairs;
    }
    return ojson(a.coeffs());
}

RingElem elem_from_json(const RingCtxPtr& ctx, const ojson& j) {
    if (!j.is_array()) fail(ErrorCode::Parse, "element JSON must be an array");
    if (ctx->kind == RingKind::PerfSeries) {
        std::vector<uint64_t> v(ctx->deg, 0);
        for (const auto& pair : j) {
            if (!pair.is_array() || pair.size() != 2)
                fail(ErrorCode::Parse, "PerfSeries element JSON needs [exponent, coeff] pairs");
            uint64_t e = pair[0].get<uint64_t>();
            if (e < ctx->deg) v[e] = pair[1].get<uint64_t>();
        }
        return RingElem(ctx, std::move(v));
    }
    return RingElem(ctx, j.get<std::vector<uint64_t>>());
}

ojson tilt_to_json(const TiltElem& x) {
    ojson j;
    j["ctx"] = x.ctx->descriptor();
    ojson seq = ojson::array();
    for (const auto& a : x.seq) seq.push_back(elem_to_json(a));
    j["seq"] = seq;
    j["prec"] = x.prec;
    return j;
}

TiltElem tilt_from_json(const ojson& j) {
    RingCtxPtr ctx = ring_make(j.at("ctx").get<std::string>());
    std::vector<RingElem> seq;
    for (const auto& e : j.at("seq")) seq.push_back(elem_from_json(ctx, e));
    TiltElem x = tilt_lift(ctx, std::move(seq));
    if (j.contains("prec")) x.prec = std::min<uint32_t>(x.prec, j["prec"].get<uint32_t>());
    return x;
}

ojson report_to_json(const CheckReport& rep) {
    ojson j;
    j["verdict"] = rep.verdict_name();
    j["witness"] = rep.witness ? ojson(*rep.witness) : ojson(nullptr);
    ojson bounds = ojson::object();
    for (const auto& [k, v] : rep.bounds) bounds[k] = v;
    j["bounds"] = bounds;
    j["refs"] = rep.refs;
    if (!rep.data.empty()) {
        ojson data = ojson::object();
        for (const auto& [k, v] : rep.data) data[k] = v;
        j["data"] = data;
    }
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

} // namespace tiltkit
