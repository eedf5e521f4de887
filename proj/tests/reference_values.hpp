// Frozen brute-force oracle references. Regenerate with tools/gen_reference > tests/reference_values.hpp
// after editing the frozen sets there; values are CTMC truncations at N = 400.
#pragma once

#include <array>

namespace gpsq::testref {

struct OracleReference {
    std::array<double, 7> params; // lambda1 lambda2 nu1 nu2 r phi1 phi2
    double p00;
    double p_n2_zero;
    double p_n1_zero;
    double mean_n1;
    double mean_n2;
    std::array<double, 11> p0n;
    std::array<double, 11> pn0;
    std::array<double, 11> n2_marginal;
    std::array<double, 11> n1_marginal;
    std::array<double, 3> gf_n2_at; // z = 0.2, 0.5, 0.9
    std::array<std::array<double, 7>, 7> joint;
};

// canonical : lambda1=0.29999999999999999 lambda2=0.40000000000000002 nu1=1 nu2=1 r=1 phi1=0.69999999999999996 phi2=0.59999999999999998
// oracle N=400 boundary_mass=7.57e-61 balance_residual=1.39e-17 sweeps=1939
inline constexpr OracleReference k_canonical{
    {0.29999999999999999, 0.40000000000000002, 1, 1, 1, 0.69999999999999996, 0.59999999999999998},
    0.20160099218959532, // p00
    0.33119867708054396, // Pr(N2 = 0)
    0.49839900781040969, // Pr(N1 = 0)
    1.0334643685202478, // E[N1]
    2.1479443156351889, // E[N2]
    {0.20160099218959532, 0.1090409587467355, 0.064762340526726581, 0.040709679155649756, 0.026487888873543097, 0.017613494349349577, 0.011882394639902002, 0.0080967639566432541, 0.005557344223584941, 0.003835144275409473, 0.0026577471990471518}, // p(0,n), n <= 10
    {0.20160099218959532, 0.074415944145796192, 0.030361459443715422, 0.013243862607194425, 0.0060400357723311635, 0.0028401182932921024, 0.0013650133798601806, 0.00066685406441602453, 0.00032992396745455151, 0.00016488219637364303, 8.3082599629143758e-05}, // p(n,0), n <= 10
    {0.33119867708054396, 0.21434488097198098, 0.14259066982456586, 0.096438794410857162, 0.065921695907047398, 0.045389806886541317, 0.031416236208401123, 0.021829562076185471, 0.015214057650304109, 0.010628753779990573, 0.0074397551432937217}, // Pr(N2 = n), n <= 10
    {0.49839900781040969, 0.24578689971760107, 0.12392636150964255, 0.063368746009431876, 0.032716857445684373, 0.017010769879756076, 0.0088924231987811686, 0.004668555468856926, 0.0024596563465969076, 0.0012997161660867143, 0.00068852074983582188}, // Pr(N1 = n), n <= 10
    {0.38066512520838874, 0.49236497393166756, 0.82482022816854839}, // P(1,z) at z = 0.2, 0.5, 0.9
    {{
        {0.20160099218959532, 0.1090409587467355, 0.064762340526726581, 0.040709679155649756, 0.026487888873543097, 0.017613494349349577, 0.011882394639902002},
        {0.074415944145796192, 0.055247678201355205, 0.037550132431565089, 0.025130258914071595, 0.016870486054542666, 0.011408110504447535, 0.007770846777011127},
        {0.030361459443715422, 0.026207177855735855, 0.019887902650268328, 0.014303909760364827, 0.010058423688388192, 0.0070107151485912277, 0.0048732166759413989},
        {0.013243862607194425, 0.012357954373935285, 0.010139478382258678, 0.0077629657182084373, 0.0057216637507454581, 0.0041288672258933939, 0.0029445215687440192},
        {0.0060400357723311635, 0.0058854060250909867, 0.005097213551165174, 0.0041030034592522474, 0.0031543273452452119, 0.0023551993851996765, 0.001725853217148289},
        {0.0028401182932921024, 0.0028399976818643019, 0.0025546173862792715, 0.002138476515847369, 0.0017041902003860224, 0.0013128146762519687, 0.00098776124222053354},
        {0.0013650133798601806, 0.0013877922612216674, 0.0012827234780641624, 0.0011070665568821074, 0.00090910869173666236, 0.00071993860679417864, 0.00055514270099285134},
    }}, // p(n1,n2), n1,n2 <= 6
};

// case_d : lambda1=0.34999999999999998 lambda2=0.20000000000000001 nu1=1 nu2=1 r=1 phi1=0.45000000000000001 phi2=0.90000000000000002
// oracle N=400 boundary_mass=1.54e-88 balance_residual=2.78e-17 sweeps=1099
inline constexpr OracleReference k_case_d{
    {0.34999999999999998, 0.20000000000000001, 1, 1, 1, 0.45000000000000001, 0.90000000000000002},
    0.32460424348985434, // p00
    0.71082735900290051, // Pr(N2 = 0)
    0.42205047451594563, // Pr(N1 = 0)
    1.4169939878666724, // E[N1]
    0.40805217710448521, // E[N2]
    {0.32460424348985434, 0.073731351278340448, 0.017723213411057637, 0.0044366860318962335, 0.0011434255464054673, 0.00030100741441517958, 8.0511290766573676e-05, 2.1800424932371318e-05, 5.9606515441562995e-06, 1.6426532881165749e-06, 4.5565081851437826e-07}, // p(0,n), n <= 10
    {0.32460424348985434, 0.16728729951287644, 0.091901573453851151, 0.05233286520789935, 0.030417432904176107, 0.017896229354329895, 0.010609716531513946, 0.0063212938998089821, 0.0037790157203974142, 0.0022645766926897683, 0.0013593943556639856}, // p(n,0), n <= 10
    {0.71082735900290051, 0.20505583533660998, 0.059547504666421079, 0.017371286285271195, 0.0050843386026474162, 0.0014918563125258712, 0.00043861119478369736, 0.00012916108899817919, 3.8086032083436372e-05, 1.1243292593017956e-05, 3.3223599091815673e-06}, // Pr(N2 = n), n <= 10
    {0.42205047451594563, 0.23869074328156048, 0.13830113511315381, 0.081253801059156694, 0.048139628673677048, 0.028673440896513244, 0.01713968162504409, 0.010270639828751984, 0.0061653748285927391, 0.0037058276122904367, 0.0022296370026489752}, // Pr(N1 = n), n <= 10
    {0.7543680387109426, 0.83078599220756155, 0.96080872084553759}, // P(1,z) at z = 0.2, 0.5, 0.9
    {{
        {0.32460424348985434, 0.073731351278340448, 0.017723213411057637, 0.0044366860318962335, 0.0011434255464054673, 0.00030100741441517958, 8.0511290766573676e-05},
        {0.16728729951287644, 0.05135671210931092, 0.014530107759377261, 0.0040049605404181236, 0.0010966808257430309, 0.00030059829182755665, 8.2707771858410702e-05},
        {0.091901573453851151, 0.031958197239557944, 0.010131678653070962, 0.0030531198723408107, 0.00089479610807336536, 0.00025830023269956013, 7.3968462546725294e-05},
        {0.05233286520789935, 0.019276768070715378, 0.0065745345010174592, 0.0021231994309564334, 0.00066081464670736075, 0.00020065328569655037, 5.9931921633837735e-05},
        {0.030417432904176107, 0.011532076300516145, 0.0041208631396645844, 0.0014007514939643679, 0.00045802596374523296, 0.00014546990286232921, 4.5214422435276265e-05},
        {0.017896229354329895, 0.0068913623013140976, 0.0025380036051335605, 0.00089556523314083993, 0.00030457465026932585, 0.00010050467521076063, 3.2375028334728811e-05},
        {0.010609716531513946, 0.0041224097627035449, 0.0015488626201531049, 0.000561637801823531, 0.00019699637151384528, 6.7108494893538214e-05, 2.230184400923616e-05},
    }}, // p(n1,n2), n1,n2 <= 6
};

// case_a : lambda1=0.20000000000000001 lambda2=0.5 nu1=1 nu2=1 r=1 phi1=0.94999999999999996 phi2=0.75
// oracle N=400 boundary_mass=1.58e-13 balance_residual=1.39e-17 sweeps=19689
inline constexpr OracleReference k_case_a{
    {0.20000000000000001, 0.5, 1, 1, 1, 0.94999999999999996, 0.75},
    0.045649944577341978, // p00
    0.065839305508278073, // Pr(N2 = 0)
    0.6431678611016427, // Pr(N1 = 0)
    0.55493843945533128, // E[N1]
    14.381770098807129, // E[N2]
    {0.045649944577341978, 0.040563669810488305, 0.037014763025578469, 0.034187853891549727, 0.031760042647461864, 0.029590825874348119, 0.027612449927798724, 0.025788433450188181, 0.024096762716215015, 0.022522616046429224, 0.021055013557908505}, // p(0,n), n <= 10
    {0.045649944577341978, 0.013759764236548636, 0.0043361491254424143, 0.0014021886144299778, 0.00046079969136298337, 0.00015308634942552259, 5.1256714602162348e-05, 1.7263454304123608e-05, 5.8414357491255791e-06, 1.9840152990711174e-06, 6.7596925812018386e-07}, // p(n,0), n <= 10
    {0.065839305508278073, 0.061096656305885684, 0.056904622804810893, 0.05309595454826907, 0.049588734272217591, 0.046336956883730518, 0.043311067825628283, 0.040489732385649284, 0.03785610913166406, 0.035396051667076128, 0.033097187370050019}, // Pr(N2 = n), n <= 10
    {0.6431678611016427, 0.22946219427655906, 0.081895093260797858, 0.029236023450473474, 0.010439166303781921, 0.0037280655008574528, 0.0013315572995383437, 0.00047564874645034778, 0.00016992473895332833, 6.071074787281912e-05, 2.1692479804055246e-05}, // Pr(N1 = n), n <= 10
    {0.080857168499186255, 0.12306888186016293, 0.41076813671683443}, // P(1,z) at z = 0.2, 0.5, 0.9
    {{
        {0.045649944577341978, 0.040563669810488305, 0.037014763025578469, 0.034187853891549727, 0.031760042647461864, 0.029590825874348119, 0.027612449927798724},
        {0.013759764236548636, 0.013702337861737093, 0.013047745047949543, 0.012261904003463503, 0.011477886016606422, 0.010732023670190608, 0.010032241998415922},
        {0.0043361491254424143, 0.0045542108398164971, 0.0045047879734771961, 0.0043305625722849291, 0.004106357823440621, 0.0038676663122579943, 0.0036305782720131587},
        {0.0014021886144299778, 0.001514270228784329, 0.0015406345094616141, 0.001513095081778705, 0.0014559630983805548, 0.0013845576217119996, 0.0013076960636825773},
        {0.00046079969136298337, 0.00050576112767095809, 0.00052511033216958889, 0.00052520195256399273, 0.00051265543005693959, 0.00049265715704690095, 0.00046876375175341649},
        {0.00015308634942552259, 0.00016977399410175698, 0.00017889968822089913, 0.00018162732654560424, 0.00017961285468483926, 0.00017442069802105543, 0.00016729130250618915},
        {5.1256714602162348e-05, 5.7252522493245664e-05, 6.1004416973728035e-05, 6.2694667203836809e-05, 6.2715318673969318e-05, 6.1508400550682745e-05, 5.9472127835538185e-05},
    }}, // p(n1,n2), n1,n2 <= 6
};

// case_c : lambda1=0.40000000000000002 lambda2=0.050000000000000003 nu1=1 nu2=1 r=1 phi1=0.90000000000000002 phi2=0.84999999999999998
// oracle N=400 boundary_mass=3.29e-61 balance_residual=2.78e-17 sweeps=1445
inline constexpr OracleReference k_case_c{
    {0.40000000000000002, 0.050000000000000003, 1, 1, 1, 0.90000000000000002, 0.84999999999999998},
    0.26691121578954075, // p00
    0.90161775684209344, // Pr(N2 = 0)
    0.29274517122806176, // Pr(N1 = 0)
    2.4177741509578716, // E[N1]
    0.1091583567049748, // E[N2]
    {0.26691121578954075, 0.023467547233392769, 0.0021449729446130633, 0.00020043741615490517, 1.8988736397068915e-05, 1.8156226546883933e-06, 1.7475988361965355e-07, 1.6906126716450642e-08, 1.6419817201591698e-09, 1.5998896291323523e-10, 1.5630507258140836e-11}, // p(0,n), n <= 10
    {0.26691121578954075, 0.18672503520087058, 0.13139842059057993, 0.09272283393361147, 0.065518557038360431, 0.046326132979758232, 0.032766431434847587, 0.023179486102331934, 0.016398920979727824, 0.011602349969280683, 0.0082089350172205745}, // p(n,0), n <= 10
    {0.90161775684209344, 0.088672260751381488, 0.0087495022047693188, 0.00086531274175774087, 8.5725358169696494e-05, 8.5042652254649275e-06, 8.445990878649801e-07, 8.3960589624374255e-08, 8.3532403930692614e-09, 8.3165904700773587e-10, 8.2853635911124441e-11}, // Pr(N2 = n), n <= 10
    {0.29274517122806176, 0.20694346259950691, 0.14635620195621871, 0.10353006441776885, 0.073243543765113522, 0.051819852597337381, 0.036663615194057121, 0.025940646695118672, 0.018353956209566993, 0.012986149277520913, 0.0091882344361584271}, // Pr(N1 = n), n <= 10
    {0.91970925151958338, 0.94825506434201234, 0.98920246034641746}, // P(1,z) at z = 0.2, 0.5, 0.9
    {{
        {0.26691121578954075, 0.023467547233392769, 0.0021449729446130633, 0.00020043741615490517, 1.8988736397068915e-05, 1.8156226546883933e-06, 1.7475988361965355e-07},
        {0.18672503520087058, 0.018276151503879654, 0.0017558792660211989, 0.00016845334702908995, 1.620941082390899e-05, 1.565723529880355e-06, 1.5178909218716183e-07},
        {0.13139842059057993, 0.013463903801694996, 0.0013463488608171678, 0.000133029713111894, 1.3076368469196837e-05, 1.2830482481537794e-06, 1.258710977166802e-07},
        {0.09272283393361147, 0.0096995461230166211, 0.00099564212146144738, 0.00010080568397860948, 1.0115562784032484e-05, 1.0095064274000729e-06, 1.004182653196575e-07},
        {0.065518557038360431, 0.0069203576150388248, 0.00072178062610070296, 7.4396344358990512e-05, 7.595783138473614e-06, 7.7002390743943036e-07, 7.7661037879723176e-08},
        {0.046326132979758232, 0.0049159309877858312, 0.00051755629965164601, 5.400502730488632e-05, 5.5880059025765204e-06, 5.7404251014810855e-07, 5.8623992840269641e-08},
        {0.032766431434847587, 0.0034849611783851361, 0.00036889381939460687, 3.8804816109051781e-05, 4.0546008422810544e-06, 4.2092802655949923e-07, 4.3446327049449948e-08},
    }}, // p(n1,n2), n1,n2 <= 6
};

} // namespace gpsq::testref
