#pragma once

// Golden construction/synthesis fixtures, frozen as rendered text.
// One line per codeword; ledger fixtures pair the unknown and known
// byproduct combinations of one ledger entry per line.
namespace fixtures {

inline constexpr const char* k3_n1 = R"(A1+B1+C1)";

inline constexpr const char* k3_n2 = R"(A2+B1+C1)";

inline constexpr const char* k4_n1 = R"(A1
A2+B1
B2+C1
B3+D1
C2+D2
A3+C3+D3
A4+B4+C4+D4)";

inline constexpr const char* k4_n2 = R"(A5
A6+B1
B2+C1
B3+D3
C2+D4
A7+C3+D1
A8+B4+C4+D2)";

inline constexpr const char* k4_ledger = R"(D3 D1
D4 D2)";

inline constexpr const char* k7_n1 = R"(A1
A2+B1
A3+D1
A4+E1
A5+F1
B2+C1
B3+D2
B4+E2
B5+F2
B6+G1
C2+G2
D3+G3
E3+G4
F3+G5
A6+C3+D4
A7+C4+E4
A8+C5+F4
A9+C6+G6
A10+D5+E5
A11+D6+F5
A12+E6+F6
B7+C7+D7
B8+C8+E7
B9+C9+F7
B10+D8+E8
B11+D9+F8
B12+E9+F9
C10+D10+E10
C11+D11+F10
C12+D12+G7
C13+E11+F11
C14+E12+G8
C15+F12+G9
D13+E13+F13
D14+E14+G10
D15+F14+G11
E15+F15+G12
A13+B13+C16+G13
A14+B14+D16+G14
A15+B15+E16+G15
A16+B16+F16+G16
C17+D17+E17+F17
A17+B17+C18+D18+E18
A18+B18+C19+D19+F18
A19+B19+C20+D20+G17
A20+B20+C21+E19+F19
A21+B21+C22+E20+G18
A22+B22+C23+F20+G19
A23+B23+D21+E21+F21
A24+B24+D22+E22+G20
A25+B25+D23+F22+G21
A26+B26+E23+F23+G22
A27+C24+D24+E24+G23
A28+C25+D25+F24+G24
A29+C26+E25+F25+G25
A30+D26+E26+F26+G26
B27+C27+D27+E27+G27
B28+C28+D28+F27+G28
B29+C29+E28+F28+G29
B30+D29+E29+F29+G30
A31+B31+C30+D30+E30+F30
A32+C31+D31+E31+F31+G31
B32+C32+D32+E32+F32+G32)";

inline constexpr const char* k7_n2 = R"(A33
A34+B1
A35+D2
A36+E2
A37+F2
B2+C1
B3+D1
B4+E1
B5+F1
B6+G6
C2+G13
D16+G14
E16+G15
F16+G16
A38+C3+D7
A39+C4+E7
A40+C5+F7
A41+C6+G1
A42+D8+E8
A43+D9+F8
A44+E9+F9
B7+C7+D4
B8+C8+E4
B9+C9+F4
B10+D5+E5
B11+D6+F5
B12+E6+F6
C10+D18+E18
C11+D19+F18
C12+D20+G17
C13+E19+F19
C14+E20+G18
C15+F20+G19
D21+E21+F21
D22+E22+G20
D23+F22+G21
E23+F23+G22
A45+B13+C16+G2
A46+B14+D3+G3
A47+B15+E3+G4
A48+B16+F3+G5
C17+D30+E30+F30
A49+B17+C18+D10+E10
A50+B18+C19+D11+F10
A51+B19+C20+D12+G7
A52+B20+C21+E11+F11
A53+B21+C22+E12+G8
A54+B22+C23+F12+G9
A55+B23+D13+E13+F13
A56+B24+D14+E14+G10
A57+B25+D15+F14+G11
A58+B26+E15+F15+G12
A59+C24+D27+E27+G27
A60+C25+D28+F27+G28
A61+C26+E28+F28+G29
A62+D29+E29+F29+G30
B27+C27+D24+E24+G23
B28+C28+D25+F24+G24
B29+C29+E25+F25+G25
B30+D26+E26+F26+G26
A63+B31+C30+D17+E17+F17
A64+C31+D32+E32+F32+G32
B32+C32+D31+E31+F31+G31)";

inline constexpr const char* k7_ledger = R"(D1 D2
D4 D7
E1 E2
E4 E7
F1 F2
F4 F7
G6 G1
G13 G2
D5+E5 D8+E8
D18+E18 D10+E10
D6+F5 D9+F8
D19+F18 D11+F10
D16+G14 D3+G3
D20+G17 D12+G7
E6+F6 E9+F9
E19+F19 E11+F11
E16+G15 E3+G4
E20+G18 E12+G8
F16+G16 F3+G5
F20+G19 F12+G9
D21+E21+F21 D13+E13+F13
D30+E30+F30 D17+E17+F17
D22+E22+G20 D14+E14+G10
D24+E24+G23 D27+E27+G27
D23+F22+G21 D15+F14+G11
D25+F24+G24 D28+F27+G28
E23+F23+G22 E15+F15+G12
E25+F25+G25 E28+F28+G29
D26+E26+F26+G26 D29+E29+F29+G30
D31+E31+F31+G31 D32+E32+F32+G32)";

inline constexpr const char* k7_g_ab = R"(C2
A1+C6
A2+D3
A3+E3
A4+F3
B1+C16
C12+D12
C14+E12
C15+F12
A5+G33
B2+G34
D1+G35
E1+G36
F1+G37
A6+B3+D16
A7+B4+E16
A8+B5+F16
A9+B6+G38
A10+D14+E14
A11+D15+F14
A12+E15+F15
B7+C20+D20
B8+C22+E20
B9+C23+F20
C24+D24+E24
C25+D25+F24
C26+E25+F25
B10+D22+E22
B11+D23+F22
B12+D2+G39
B13+E23+F23
B14+E2+G40
B15+F2+G41
D26+E26+F26
D5+E5+G42
D6+F5+G43
E6+F6+G44
A13+B16+C1+G45
A14+C3+D4+G46
A15+C4+E4+G47
A16+C5+F4+G48
B17+D29+E29+F29
A17+B18+C27+D27+E27
A18+B19+C28+D28+F27
A19+B20+C7+D7+G49
A20+B21+C29+E28+F28
A21+B22+C8+E7+G50
A22+B23+C9+F7+G51
A23+C31+D31+E31+F31
A24+C10+D10+E10+G52
A25+C11+D11+F10+G53
A26+C13+E11+F11+G54
A27+B24+D8+E8+G55
A28+B25+D9+F8+G56
A29+B26+E9+F9+G57
A30+D13+E13+F13+G58
B27+C18+D18+E18+G59
B28+C19+D19+F18+G60
B29+C21+E19+F19+G61
C17+D17+E17+F17+G62
A31+B30+C32+D32+E32+F32
A32+B31+D21+E21+F21+G63
B32+C30+D30+E30+F30+G64)";

inline constexpr const char* k7_g_bd = R"(G33
A14+B1
B2+C2
B3+E3
B4+F3
A3+D1
A9+C6
A15+E16
A16+F16
A1+G34
D2+G35
B5+G36
E2+G37
F2+G38
B6+C12+D3
B7+D4+E14
B8+D5+F14
B9+D6+G39
B10+C14+E12
B11+C15+F12
B12+E15+F15
A13+C16+D7
A24+D8+E22
A25+D9+F22
A21+C22+E20
A22+C23+F20
A26+E23+F23
C27+D10+E27
C28+D11+F27
C1+D12+G40
D13+E29+F29
D14+E8+G41
D15+F8+G42
C29+E28+F28
C8+E7+G43
C9+F7+G44
E9+F9+G45
A19+B13+C20+D16
A6+B14+C3+G46
A4+B15+E1+G47
A5+B16+F1+G48
C32+D17+E32+F32
A27+B17+C24+D18+E24
A28+B18+C25+D19+F24
A2+B19+C7+D20+G49
A30+B20+D21+E26+F26
A10+B21+D22+E5+G50
A11+B22+D23+F5+G51
A29+B23+C26+E25+F25
A7+B24+C4+E4+G52
A8+B25+C5+F4+G53
A12+B26+E6+F6+G54
B27+C10+D24+E10+G55
B28+C11+D25+F10+G56
B29+D26+E13+F13+G57
B30+C13+E11+F11+G58
A17+C18+D27+E18+G59
A18+C19+D28+F18+G60
A23+D29+E21+F21+G61
A20+C21+E19+F19+G62
A32+B31+C31+D30+E31+F31
B32+C17+D31+E17+F17+G63
A31+C30+D32+E30+F30+G64)";

inline constexpr const char* k7_g_cd = R"(G33
C1+D1
A9+D2
D3+E3
D4+F3
C2+E12
A13+B13
B27+E27
E15+F15
D5+G34
C3+G35
A1+G36
A27+E24
C4+F12
A24+C5+D6
C6+D7+E14
C7+D8+F14
C8+D9+G37
A14+B14+D10
A28+D11+F24
D12+F10+G38
A19+B19+C9
B24+C10+E22
B28+C11+F27
A15+B15+E16
A16+B16+F16
B29+E28+F28
B4+E2+G39
B2+D13+G40
B3+C12+G41
B6+C13+D14
C14+E10+G42
B5+F2+G43
A29+E25+F25
A4+E1+G44
A5+F1+G45
E11+F11+G46
A7+C15+E4+G47
A22+B22+D15+F20
B30+D16+E29+F29
A8+D17+F4+G48
A30+C16+E26+F26
A21+B21+C17+D18+E20
A25+B25+C18+D19+F22
A2+B1+C19+D20+G49
B32+C20+D21+E32+F32
B8+C21+D22+E7+G50
B9+C22+D23+F7+G51
A32+C23+D24+E31+F31
A17+B17+D25+E18+G52
A18+B18+D26+F18+G53
B12+D27+E9+F9+G54
A10+C24+D28+E5+G55
A11+C25+D29+F5+G56
C26+D30+E13+F13+G57
A12+C27+E6+F6+G58
A3+B10+C28+E8+G59
A6+B11+C29+F8+G60
B7+C30+E17+F17+G61
A20+B20+E19+F19+G62
A26+B26+C31+D31+E23+F23
A23+B23+D32+E21+F21+G63
A31+B31+C32+E30+F30+G64)";

inline constexpr const char* k7_c_ef = R"(C33
F1+G2
A7+F2
B2+F3
D10+F4
B8+E1
E2+G8
B4+C34
B7+D7
C35+F5
C36+E3
A1+C37
A8+E4
D11+E5
A20+B20+E6
B9+E7+F6
D17+E8+F7
C38+E9+F8
A9+F9+G6
A6+D4+F10
C39+D13+F11
A29+E10+G25
B29+E11+G29
D12+E12+G7
A13+B13+G13
A27+D24+G23
B27+D27+G27
B5+C40+F12
A4+C41+F13
C42+E13+G4
E14+F14+G9
B12+C43+E15
C44+D3+G3
A17+B17+D18
A2+B1+C45
A3+C46+D1
B3+C47+D2
A10+C48+D5+E16
A28+D25+F15+G24
B28+D28+F16+G28
A21+B21+F17+G18
A18+B18+D19+E17
A22+B22+E18+F18+G19
A32+D31+E19+F19+G31
A5+C49+E20+F20+G5
B32+D32+E21+F21+G32
B6+C50+E22+F22+G1
C51+D14+E23+F23+G10
A31+B31+D30+E24+F24
A15+B15+C52+F25+G15
A30+C53+D26+F26+G26
B30+C54+D29+F27+G30
A19+B19+D20+F28+G17
A11+C55+D6+E25+F29
B10+C56+D8+E26+F30
A23+B23+C57+D21+E27
A16+B16+C58+E28+G16
A12+C59+D15+E29+G11
B11+C60+D9+E30+G12
A14+B14+C61+D16+G14
A26+B26+C62+E31+F31+G22
A24+B24+C63+D22+F32+G20
A25+B25+C64+D23+E32+G21)";

inline constexpr const char* k7_swap_bc = R"(A1
A2+C1
A3+D1
A4+E1
A5+F1
B1+C2
C3+D2
C4+E2
C5+F2
C6+G1
B2+G2
D3+G3
E3+G4
F3+G5
A6+B3+D4
A7+B4+E4
A8+B5+F4
A9+B6+G6
A10+D5+E5
A11+D6+F5
A12+E6+F6
B7+C7+D7
B8+C8+E7
B9+C9+F7
C10+D8+E8
C11+D9+F8
C12+E9+F9
B10+D10+E10
B11+D11+F10
B12+D12+G7
B13+E11+F11
B14+E12+G8
B15+F12+G9
D13+E13+F13
D14+E14+G10
D15+F14+G11
E15+F15+G12
A13+B16+C13+G13
A14+C14+D16+G14
A15+C15+E16+G15
A16+C16+F16+G16
B17+D17+E17+F17
A17+B18+C17+D18+E18
A18+B19+C18+D19+F18
A19+B20+C19+D20+G17
A20+B21+C20+E19+F19
A21+B22+C21+E20+G18
A22+B23+C22+F20+G19
A23+C23+D21+E21+F21
A24+C24+D22+E22+G20
A25+C25+D23+F22+G21
A26+C26+E23+F23+G22
A27+B24+D24+E24+G23
A28+B25+D25+F24+G24
A29+B26+E25+F25+G25
A30+D26+E26+F26+G26
B27+C27+D27+E27+G27
B28+C28+D28+F27+G28
B29+C29+E28+F28+G29
C30+D29+E29+F29+G30
A31+B30+C31+D30+E30+F30
A32+B31+D31+E31+F31+G31
B32+C32+D32+E32+F32+G32)";

}  // namespace fixtures
