#ifndef QRS_QRS_HPP
#define QRS_QRS_HPP

#include "qrs/direction.hpp"
#include "qrs/lhv.hpp"
#include "qrs/measurement.hpp"
#include "qrs/postulates.hpp"
#include "qrs/report_io.hpp"
#include "qrs/rng.hpp"
#include "qrs/scenarios.hpp"
#include "qrs/space.hpp"
#include "qrs/spectral.hpp"
#include "qrs/state.hpp"
#include "qrs/types.hpp"

#endif  // QRS_QRS_HPP
