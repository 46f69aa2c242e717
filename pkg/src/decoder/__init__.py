"""Color-restriction decoding: certified color sets, good-set selection and the stratified decoder."""

from decoder.color_restriction import (
    ColorCertificate,
    DecodeReport,
    GoodColorSet,
    LinkSolution,
    certify_by_cone,
    certify_color_set,
    check_disjunction,
    check_link_equivalence,
    conditional_error_rates,
    decode,
    outside_faces,
    restricted_link,
    select_good_F,
    stratum_distances,
)

__all__ = [
    'ColorCertificate',
    'DecodeReport',
    'GoodColorSet',
    'LinkSolution',
    'certify_by_cone',
    'certify_color_set',
    'check_disjunction',
    'check_link_equivalence',
    'conditional_error_rates',
    'decode',
    'outside_faces',
    'restricted_link',
    'select_good_F',
    'stratum_distances',
]
