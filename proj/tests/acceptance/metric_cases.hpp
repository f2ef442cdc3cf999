#pragma once

// Frozen metric fixture: candidate text, reference text, then
// bleu, r1 p/r/f1, rl p/r/f1 computed by an external implementation.
struct MetricCase {
    const char* candidate;
    const char* reference;
    double bleu;
    double r1_p, r1_r, r1_f1;
    double rl_p, rl_r, rl_f1;
};

inline constexpr MetricCase kMetricCases[] = {
    {"the cat sat on mat",
     "the cat sat on the mat",
     0.57893006746740983, 1, 0.83333333333333337, 0.90909090909090906, 1, 0.83333333333333337, 0.90909090909090906},
    {"alpha bravo charlie delta echo",
     "alpha bravo charlie delta echo",
     1, 1, 1, 1, 1, 1, 1},
    {"alpha bravo charlie",
     "alpha bravo charlie",
     1, 1, 1, 1, 1, 1, 1},
    {"x0 x1 x2 x3 x4 x5 x6 x7 x8 x9 x10 x11 x12 x13 x14 x15 x16 x17 x18 x19 x20 x21 x22 x23 x24 x25 x26 x27 x28 x29",
     "y0 y1 y2 y3 y4 y5 y6 y7 y8 y9 y10 y11 y12 y13 y14 y15 y16 y17 y18 y19 y20 y21 y22 y23 y24 y25 y26 y27 y28 y29",
     0.033922687807926767, 0, 0, 0, 0, 0, 0},
    {"alpha alpha alpha",
     "alpha",
     0.48549177170732338, 0.33333333333333331, 1, 0.5, 0.33333333333333331, 1, 0.5},
    {"alpha",
     "alpha",
     1, 1, 1, 1, 1, 1, 1},
    {"alpha",
     "bravo",
     0.8408964152537145, 0, 0, 0, 0, 0, 0},
    {"alpha bravo",
     "alpha bravo charlie delta echo foxtrot",
     0.1353352832366127, 1, 0.33333333333333331, 0.5, 1, 0.33333333333333331, 0.5},
    {"alpha bravo charlie delta echo foxtrot",
     "alpha bravo",
     0.24028114141347542, 0.33333333333333331, 1, 0.5, 0.33333333333333331, 1, 0.5},
    {"alpha bravo charlie delta",
     "alpha charlie bravo delta",
     0.45180100180492239, 1, 1, 1, 0.75, 0.75, 0.75},
    {"alpha kilo alpha",
     "india charlie india delta lima charlie kilo kilo lima charlie november charlie charlie india juliet hotel hotel bravo kilo echo mike hotel",
     0.00086228365715424284, 0.33333333333333331, 0.045454545454545456, 0.080000000000000002, 0.33333333333333331, 0.045454545454545456, 0.080000000000000002},
    {"bravo juliet echo bravo alpha delta lima bravo bravo bravo india lima bravo echo charlie bravo alpha juliet mike charlie bravo alpha india india golf juliet delta hotel golf delta mike foxtrot",
     "hotel echo echo hotel india mike charlie",
     0.050499741776474726, 0.1875, 0.8571428571428571, 0.30769230769230765, 0.125, 0.5714285714285714, 0.20512820512820512},
    {"foxtrot foxtrot mike golf lima charlie charlie kilo india kilo india",
     "foxtrot hotel juliet kilo echo kilo alpha charlie hotel golf mike golf kilo lima lima foxtrot juliet kilo kilo alpha india mike delta india delta november lima india golf lima november juliet",
     0.031422523014859226, 0.90909090909090906, 0.3125, 0.46511627906976738, 0.63636363636363635, 0.21875, 0.32558139534883718},
    {"bravo charlie mike juliet foxtrot kilo echo juliet mike foxtrot charlie golf charlie mike hotel hotel golf india golf india golf echo november charlie lima kilo charlie foxtrot golf hotel india juliet delta juliet bravo juliet kilo lima",
     "golf lima delta mike india lima golf charlie hotel alpha foxtrot hotel charlie juliet juliet hotel hotel lima kilo juliet foxtrot golf bravo echo bravo",
     0.087543878790720356, 0.57894736842105265, 0.88, 0.69841269841269848, 0.28947368421052633, 0.44, 0.34920634920634924},
    {"mike lima charlie foxtrot charlie alpha golf bravo echo juliet india foxtrot lima kilo echo echo bravo november november lima alpha golf hotel charlie juliet mike mike bravo alpha mike hotel juliet lima lima",
     "delta kilo lima india foxtrot echo golf india mike india echo echo india lima echo delta charlie golf november charlie mike kilo kilo november delta hotel echo foxtrot mike delta charlie juliet juliet alpha charlie alpha kilo golf",
     0.084345156040594033, 0.70588235294117652, 0.63157894736842102, 0.66666666666666674, 0.38235294117647056, 0.34210526315789475, 0.3611111111111111},
    {"lima charlie hotel echo delta echo november bravo echo foxtrot charlie delta hotel bravo delta echo lima lima lima echo golf mike alpha golf india foxtrot echo echo",
     "echo lima india india golf bravo bravo bravo delta lima echo lima hotel lima golf juliet echo juliet lima november alpha hotel juliet bravo hotel hotel alpha delta india november golf juliet charlie charlie",
     0.083226184028819261, 0.7142857142857143, 0.58823529411764708, 0.64516129032258063, 0.35714285714285715, 0.29411764705882354, 0.32258064516129031},
    {"november",
     "november alpha november mike november november kilo golf foxtrot charlie mike november lima mike foxtrot juliet foxtrot lima india november foxtrot charlie golf foxtrot november golf kilo kilo india mike hotel lima kilo lima",
     4.6588861451033977e-15, 1, 0.029411764705882353, 0.057142857142857148, 1, 0.029411764705882353, 0.057142857142857148},
    {"november mike hotel november bravo alpha bravo india golf bravo hotel delta india golf foxtrot india charlie",
     "juliet kilo delta hotel delta lima golf alpha",
     0.088474875747662787, 0.23529411764705882, 0.5, 0.31999999999999995, 0.17647058823529413, 0.375, 0.23999999999999999},
    {"november alpha foxtrot juliet kilo kilo november delta delta charlie india charlie kilo charlie kilo bravo hotel mike juliet lima india november delta alpha delta charlie november golf charlie kilo lima",
     "november golf foxtrot lima alpha echo mike alpha echo kilo bravo mike juliet",
     0.078033262254358179, 0.32258064516129031, 0.76923076923076927, 0.45454545454545453, 0.19354838709677419, 0.46153846153846156, 0.27272727272727271},
    {"golf november echo india juliet november november alpha alpha charlie hotel kilo foxtrot india bravo charlie mike kilo lima golf echo bravo",
     "echo kilo bravo golf alpha foxtrot foxtrot golf india echo juliet bravo kilo bravo lima november",
     0.091097895853121419, 0.63636363636363635, 0.875, 0.73684210526315785, 0.31818181818181818, 0.4375, 0.36842105263157893},
    {"hotel alpha kilo hotel delta charlie juliet golf foxtrot foxtrot delta november hotel lima november",
     "lima lima charlie golf hotel juliet juliet november foxtrot golf lima charlie foxtrot juliet november alpha mike lima bravo charlie foxtrot india bravo alpha mike kilo",
     0.061489657597744607, 0.73333333333333328, 0.42307692307692307, 0.53658536585365846, 0.40000000000000002, 0.23076923076923078, 0.29268292682926833},
    {"foxtrot golf hotel delta lima juliet hotel bravo india november hotel mike echo foxtrot delta bravo echo lima echo charlie november november echo foxtrot alpha echo lima alpha foxtrot lima charlie golf golf foxtrot charlie alpha",
     "alpha golf charlie hotel bravo echo echo foxtrot lima kilo charlie lima bravo lima foxtrot mike charlie juliet india bravo lima delta foxtrot golf alpha mike november echo",
     0.10001000250075022, 0.69444444444444442, 0.8928571428571429, 0.78125, 0.33333333333333331, 0.42857142857142855, 0.375},
    {"mike alpha november lima juliet mike juliet november lima alpha lima bravo bravo golf mike lima charlie india bravo charlie lima charlie golf juliet november alpha juliet november india hotel hotel echo bravo india delta charlie charlie charlie",
     "mike lima echo golf golf kilo mike alpha echo kilo echo golf lima lima golf bravo hotel echo mike echo kilo hotel",
     0.067552863859209403, 0.34210526315789475, 0.59090909090909094, 0.43333333333333335, 0.26315789473684209, 0.45454545454545453, 0.33333333333333331},
    {"november delta november bravo foxtrot kilo bravo kilo november bravo mike bravo foxtrot november golf lima juliet lima alpha foxtrot juliet echo mike golf india november lima november foxtrot hotel november india november mike charlie kilo echo juliet",
     "lima golf alpha bravo bravo echo hotel november foxtrot india juliet juliet bravo golf bravo hotel foxtrot",
     0.064293209800853859, 0.42105263157894735, 0.94117647058823528, 0.58181818181818179, 0.21052631578947367, 0.47058823529411764, 0.29090909090909089},
    {"delta echo november kilo delta golf foxtrot echo",
     "lima foxtrot india charlie kilo charlie mike kilo charlie alpha lima echo juliet india charlie juliet india november golf november india",
     0.040893723093720288, 0.625, 0.23809523809523808, 0.34482758620689652, 0.375, 0.14285714285714285, 0.20689655172413796},
};
