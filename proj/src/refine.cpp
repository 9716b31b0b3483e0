#include "refine_impl.hpp"

namespace khs {

SZResult s_integral(const PlanarDiagram& d, long m) { return s_integral_impl(d, m); }

OperationMatrix<F2> bockstein_sq1(const PlanarDiagram& d, KhovanovData<F2>& kh, int j_lo,
                                  int j_hi) {
    return bockstein_sq1_impl(d, kh, j_lo, j_hi);
}

OperationMatrix<F2> bockstein_sq1(const PlanarDiagram& d) {
    KhovanovData<F2> kh(d);
    auto c = kh.complex();
    int lo = c.size() ? c.j_min() : -1;
    int hi = c.size() ? c.j_max() : 1;
    return bockstein_sq1_impl(d, kh, lo, hi);
}

#define KHS_INSTANTIATE_FIELD(F)                                                                 \
    template SField s_field<F>(const PlanarDiagram&);                                            \
    template SField s_field<F>(BarNatanEngine<F>&);                                              \
    template BasisManifest export_basis<F>(const PlanarDiagram&);                                \
    template BasisManifest export_basis<F>(const PlanarDiagram&, KhovanovData<F>&);              \
    template OperationMatrix<F> load_operation<F>(const std::string&, const PlanarDiagram&);     \
    template OperationMatrix<F> parse_operation<F>(const std::string&, const PlanarDiagram&,     \
                                                   KhovanovData<F>&);                            \
    template std::string operation_to_json<F>(const OperationMatrix<F>&);                        \
    template FullnessResult<F> is_half_full<F>(FiltrationMaps<F>&, const OperationMatrix<F>&,    \
                                               int);                                            \
    template FullnessResult<F> is_full<F>(FiltrationMaps<F>&, const OperationMatrix<F>&, int);   \
    template RefinedInvariants<F> refined_invariants<F>(const PlanarDiagram&,                    \
                                                        const RefinedOptions&);                  \
    template std::map<int, std::pair<bool, bool>> fullness_scan<F>(const PlanarDiagram&,         \
                                                                   const OperationMatrix<F>&);

KHS_INSTANTIATE_FIELD(F2)
KHS_INSTANTIATE_FIELD(Fp<3>)
KHS_INSTANTIATE_FIELD(Fp<5>)
KHS_INSTANTIATE_FIELD(Fp<7>)
KHS_INSTANTIATE_FIELD(Fp<65521>)
KHS_INSTANTIATE_FIELD(QQ)

#undef KHS_INSTANTIATE_FIELD

} // namespace khs
