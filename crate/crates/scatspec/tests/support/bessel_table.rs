// Frozen reference values for J_nu(x), nu = TWICE/2.
// Computed with a 60-digit decimal evaluation of the ascending power
// series (term recursion, exact Gamma prefactors), printed to 22
// significant digits. Arguments are exact f64 values.
pub const BESSEL_ORACLE: &[(u32, f64, f64)] = &[
    (0, 1.0_f64, 7.651976865579665514497e-1),
    (0, 0.5_f64, 9.384698072408129042284e-1),
    (0, 2.0_f64, 2.238907791412356680518e-1),
    (0, 5.25_f64, -9.308098963931787284604e-2),
    (0, 10.0_f64, -2.459357644513483351978e-1),
    (0, 12.0_f64, 4.768931079683353662381e-2),
    (0, 19.5_f64, 1.788538270401728929681e-1),
    (0, 27.0_f64, 7.274191800588708758407e-2),
    (2, 1.0_f64, 4.400505857449335159597e-1),
    (2, 3.5_f64, 1.373775273623271857161e-1),
    (2, 8.0_f64, 2.346363468539146243813e-1),
    (2, 16.25_f64, 4.328723734053208140137e-2),
    (2, 26.0_f64, 1.504573058691581114983e-2),
    (4, 0.25_f64, 7.771889285962676928909e-3),
    (4, 2.0_f64, 3.528340286156377191506e-1),
    (4, 7.5_f64, -2.302734105257902621508e-1),
    (4, 14.0_f64, -1.520198825820596229052e-1),
    (4, 22.5_f64, 1.653840533114015790304e-1),
    (6, 1.5_f64, 6.096395114113963064395e-2),
    (6, 6.0_f64, 1.147683848207752963595e-1),
    (6, 13.25_f64, -5.035372817896464375267e-2),
    (6, 24.0_f64, 1.612703599722766377121e-1),
    (10, 2.5_f64, 1.950162513450321988647e-2),
    (10, 9.0_f64, -5.503885566951370750545e-2),
    (10, 18.0_f64, -1.553700987790493433213e-1),
    (16, 4.0_f64, 4.028667820819003737377e-3),
    (16, 12.5_f64, -5.382403945501135999496e-2),
    (16, 25.0_f64, 1.530061666573989192311e-1),
    (24, 6.5_f64, 1.254122031774244470312e-3),
    (24, 15.0_f64, 2.366658440547680559057e-1),
    (24, 28.0_f64, -3.829245755758497307877e-3),
    (40, 10.0_f64, 1.151336924781339778330e-5),
    (40, 21.0_f64, 2.145259632716866492476e-1),
    (1, 0.5_f64, 5.409737899345280913309e-1),
    (1, 2.25_f64, 4.138750606476002820919e-1),
    (1, 7.0_f64, 1.981287740763448201500e-1),
    (1, 15.5_f64, 4.184329474440280722684e-2),
    (1, 26.5_f64, 1.517953407875600358832e-1),
    (3, 1.0_f64, 2.402978391234270108958e-1),
    (3, 4.5_f64, -2.419664543074736384543e-3),
    (3, 11.0_f64, -2.293459483935930314923e-2),
    (3, 23.0_f64, 8.252652682676100690198e-2),
    (5, 2.0_f64, 2.239245314689157658446e-1),
    (5, 8.25_f64, -2.060258620886697315533e-1),
    (5, 19.0_f64, -5.578236534556744730145e-2),
    (11, 7.3_f64, 3.554026385915050684135e-1),
    (11, 3.0_f64, 2.266093494546132475347e-2),
    (11, 14.5_f64, 2.147676781154361751026e-1),
    (21, 9.5_f64, 1.238981932348256662984e-1),
    (21, 20.0_f64, 1.416119922847308080948e-1),
    (31, 12.0_f64, 2.126348851649480372540e-2),
];
