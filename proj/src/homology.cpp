#include "homology_impl.hpp"

namespace khs {

HomologyTable integral_homology(const GradedComplex<ZZ>& c) { return integral_homology_impl(c); }

#define KHS_INSTANTIATE_FIELD(F)                                                       \
    template class KhovanovData<F>;                                                    \
    template class BarNatanEngine<F>;                                                  \
    template HomologyTable field_homology<F>(const GradedComplex<F>&);                 \
    template std::map<int, int> homology_by_degree<F>(const GradedComplex<F>&);        \
    template Mat<F> pstar_canonical<F>(BarNatanEngine<F>&, KhovanovData<F>&, int);     \
    template FiltrationMaps<F> make_filtration_engine<F>(const PlanarDiagram&);        \
    template FiltrationMaps<F> filtration_maps<F>(const PlanarDiagram&);

KHS_INSTANTIATE_FIELD(F2)
KHS_INSTANTIATE_FIELD(Fp<3>)
KHS_INSTANTIATE_FIELD(Fp<5>)
KHS_INSTANTIATE_FIELD(Fp<7>)
KHS_INSTANTIATE_FIELD(Fp<65521>)
KHS_INSTANTIATE_FIELD(QQ)

#undef KHS_INSTANTIATE_FIELD

} // namespace khs
