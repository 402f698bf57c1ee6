// SPDX-License-Identifier: Apache-2.0
// Reference values computed at 40 digits with mpmath (besselj/bessely/besseli/besselk of
// half-integer order).

#pragma once

namespace biharm::testref
{

struct BesselValue
{
  int l;
  double x;
  double value;
};

inline constexpr BesselValue kSphericalJ[] = {
    {0, 0.001, 0.99999983333334166667},
    {0, 0.5, 0.95885107720840600055},
    {0, 2, 0.4546487134128408477},
    {0, 7.3, 0.11649816720939239966},
    {0, 15, 0.043352522677141124389},
    {0, 29.9, -0.033394482630896809},
    {0, 30.5, -0.026004171785484758701},
    {0, 55, -0.018177366788338542484},
    {0, 61, -0.015837996229645786017},
    {0, 100, -0.0050636564110975879366},
    {1, 0.001, 0.00033333330000000119048},
    {1, 0.5, 0.16253703063606656886},
    {1, 2, 0.43539777497999161735},
    {1, 7.3, -0.056106760297494902638},
    {1, 15, 0.053536029035730826549},
    {1, 29.9, -0.0029510617050472453256},
    {1, 30.5, -0.020821644193175111859},
    {1, 55, -0.00073280223727807776449},
    {1, 61, 0.0039715350771905190112},
    {1, 100, -0.0086738252869878152204},
    {2, 0.001, 6.6666661904762037037e-8},
    {2, 0.5, 0.016371106607993412617},
    {2, 2, 0.19844794905714657832},
    {2, 7.3, -0.13955573993439030485},
    {2, 15, -0.032645316869994959079},
    {2, 29.9, 0.033098389483233205791},
    {2, 30.5, 0.023956141209106878846},
    {2, 55, 0.018137395757214283696},
    {2, 61, 0.016033317626884664001},
    {2, 100, 0.00480344165248795348},
    {3, 0.001, 9.523808994709006734e-12},
    {3, 0.5, 0.001174035443867557309},
    {3, 2, 0.060722097662874828461},
    {3, 7.3, -0.039479362945238182878},
    {3, 15, -0.064417801325729146242},
    {3, 29.9, 0.0084859094447183499729},
    {3, 30.5, 0.024748880456963124785},
    {3, 55, 0.0023816563970248308278},
    {3, 61, -0.0026573287143311203226},
    {3, 100, 0.0089139973696122128944},
    {5, 0.001, 9.6200092500092561759e-20},
    {5, 0.5, 2.9774668754574455816e-6},
    {5, 2, 0.002635169770244117349},
    {5, 7.3, 0.16486146555622406217},
    {5, 15, 0.065968007076521960742},
    {5, 29.9, -0.017850641735096309537},
    {5, 30.5, -0.030141819229455639035},
    {5, 55, -0.0052999924455565683774},
    {5, 61, 0.00024676620797193163228},
    {5, 100, -0.0092901489349075717663},
    {10, 0.001, 7.2730917874467300889e-41},
    {10, 0.5, 7.064123963661878184e-14},
    {10, 2, 6.8253008649747254692e-8},
    {10, 7.3, 0.0092331933854981527217},
    {10, 15, 0.0018969790010883333311},
    {10, 29.9, -0.011586807876671626848},
    {10, 30.5, -0.026599145471078447903},
    {10, 55, 0.0095256289349167383018},
    {10, 61, 0.013221426734143682795},
    {10, 100, -0.00019565785971342900596},
    {20, 0.001, 7.6259789162179685985e-86},
    {20, 0.5, 7.2515880810153971263e-32},
    {20, 2, 7.6326411008876086676e-20},
    {20, 7.3, 7.5127541269070165267e-9},
    {20, 15, 0.0015467058510412507907},
    {20, 29.9, -0.017389704189781681515},
    {20, 30.5, -0.00071042343920695301865},
    {20, 55, 0.013885519185862762824},
    {20, 61, 0.016846500920122971085},
    {20, 100, 0.010107671283873054092},
    {30, 0.001, 5.6111936491761779152e-133},
    {30, 0.5, 5.2154726081997028857e-52},
    {30, 2, 5.836617887522487293e-34},
    {30, 7.3, 2.9096873704082398259e-17},
    {30, 15, 1.7111182064085785132e-8},
    {30, 29.9, 0.027166534482603108103},
    {30, 30.5, 0.032485348958545049875},
    {30, 55, -0.015105948513160626118},
    {30, 61, 0.0055643866837636116677},
    {30, 100, 0.0087006285144475758186},
    {45, 0.001, 3.1130384250545826978e-206},
    {45, 0.5, 8.8359030369042004384e-85},
    {45, 2, 1.0719943756169194793e-57},
    {45, 7.3, 1.6516090046275687328e-32},
    {45, 15, 7.6738273309210805384e-19},
    {45, 29.9, 4.8764387595752804822e-7},
    {45, 30.5, 9.5644687952187378848e-7},
    {45, 55, -0.023769522597717694047},
    {45, 61, 0.0185973203949215565},
    {45, 100, 0.0088386506634276594863},
    {60, 0.001, 1.1852101714415277144e-281},
    {60, 0.5, 1.0269617590489573715e-119},
    {60, 2, 1.3444123512744513815e-83},
    {60, 7.3, 6.01068140092015401e-50},
    {60, 15, 1.7341493758506495991e-31},
    {60, 29.9, 9.6815671761822683772e-15},
    {60, 30.5, 2.7250254741602136451e-14},
    {60, 55, 0.0025385038664191365966},
    {60, 61, 0.02037036082784437387},
    {60, 100, -0.0048764691067704092794},
};

struct ZeroValue
{
  int l;
  int n;
  double alpha;
};

inline constexpr ZeroValue kZeros[] = {
    {0, 1, 3.1415926535897932385},
    {0, 2, 6.2831853071795864769},
    {0, 5, 15.707963267948966192},
    {0, 20, 62.831853071795864769},
    {1, 1, 4.4934094579090641753},
    {1, 2, 7.7252518369377071642},
    {1, 5, 17.22075527193076874},
    {1, 20, 64.387119590557413712},
    {2, 1, 5.7634591968945497914},
    {2, 2, 9.0950113304763551563},
    {2, 5, 18.689036355362822202},
    {2, 20, 65.927941502958645068},
    {3, 1, 6.987932000500519959},
    {3, 2, 10.417118547379364763},
    {3, 5, 20.121806174453818286},
    {3, 20, 67.455284479802818706},
    {7, 1, 11.657032192516371598},
    {7, 2, 15.431289210268378367},
    {7, 5, 25.60285595381064707},
    {7, 20, 73.445899362327683433},
    {15, 1, 20.54022982504821068},
    {15, 2, 24.843762597586348509},
    {15, 5, 35.871154400649141137},
    {15, 20, 84.977816550138684343},
    {30, 1, 36.628378589713436836},
    {30, 2, 41.643008631132493502},
    {30, 5, 53.962092690756806836},
    {30, 20, 105.51764730867189021},
    {60, 1, 68.048183464745326088},
    {60, 2, 74.03967526028442826},
    {60, 5, 88.267966699851238968},
    {60, 20, 144.19173128976222843},
};

// l, x, y_l(x), i_l(x), k_l(x) with k_0(x) = exp(-x)/x
struct SecondKindValue
{
  int l;
  double x;
  double y;
  double i;
  double k;
};

inline constexpr SecondKindValue kSecondKind[] = {
    {0, 0.3, -3.1844549637520200655, 1.0150676448238087299, 2.4693940689390595536},
    {0, 2.5, 0.32045744621877348593, 2.4200817924159149286, 0.032833999449559518068},
    {0, 9, 0.10123669576496410982, 450.17132245364332895, 0.0000137122004540755055},
    {1, 0.3, -11.599917234711198802, 0.10090289768350585055, 10.700707632069258065},
    {1, 2.5, -0.11120587915407320325, 1.4848830748991084752, 0.045967599229383325295},
    {1, 9, -0.034542421052976939993, 400.15230033766119092, 0.000015235778282306117222},
    {4, 0.3, -43488.91064066892182, 8.6065542565336875683e-6, 42933.342577772441076},
    {4, 2.5, -1.7765842439054371481, 0.054593267026595674315, 0.70947706010608206641},
    {4, 9, 0.090897666514463489931, 142.44102309004615327, 0.000038760321539595233196},
    {10, 0.3, -370472999001932.20889, 4.3030982800785712212e-16, 368722276520191.88513},
    {10, 2.5, -32423.794085334419855, 7.939809871035048981e-7, 23332.607369746984917},
    {10, 9, -0.27829450961968525853, 1.3263681516866287758, 0.0030271732657179357094},
};

}  // namespace biharm::testref
