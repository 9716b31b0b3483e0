#include "complex_impl.hpp"
#include "reduce_impl.hpp"

namespace khs {

#define KHS_INSTANTIATE_RING(R)                                                              \
    template GradedComplex<R> build_complex<R>(const PlanarDiagram&, Flavor,                 \
                                               const SignAssignment&);                       \
    template bool verify_d2<R>(const GradedComplex<R>&);                                     \
    template GradedComplex<R> filtration_subcomplex<R>(const GradedComplex<R>&, int);        \
    template GradedComplex<R> graded_quotient<R>(const GradedComplex<R>&, int);              \
    template std::vector<int> gauge_chain_map<R>(const GradedComplex<R>&,                    \
                                                 const GaugeTransformation&);                \
    template class Reduction<R>;

KHS_INSTANTIATE_RING(F2)
KHS_INSTANTIATE_RING(Fp<3>)
KHS_INSTANTIATE_RING(Fp<5>)
KHS_INSTANTIATE_RING(Fp<7>)
KHS_INSTANTIATE_RING(Fp<65521>)
KHS_INSTANTIATE_RING(QQ)
KHS_INSTANTIATE_RING(ZZ)

#undef KHS_INSTANTIATE_RING

} // namespace khs
