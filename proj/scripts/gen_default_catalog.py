#!/usr/bin/env python3
"""Regenerates data/catalog/default_catalog.json.

The taxonomy (ids, layers, names, citation keys) is fixed. Likelihood, impact
and coverage values are illustrative placeholders authored for this project;
they are not measured data.
"""
import json
import pathlib

LAYERS = ["P", "SP", "DP", "MW", "DM", "AP", "SI"]

# id, name, likelihood, impact, references
ATTACKS = [
    ("P-A1", "Firmware reflashing", 0.5, 1.0, ["Quarta17"]),
    ("P-A2", "Sensor bias via local fields", 0.3, 0.6, ["Shoukry15"]),
    ("P-A3", "Power rail manipulation", 0.3, 0.8, ["Zhan24"]),
    ("P-A4", "Field tampering", 0.4, 0.6, ["Belikovetsky17"]),
    ("P-A5", "Acoustic side-channels", 0.2, 0.4, ["VacuumACPoster", "Shah22"]),
    ("SP-A1", "Active optical spoofing", 0.5, 0.8, ["Shin17", "Cao2023"]),
    ("SP-A2", "Sensor blinding and jamming", 0.6, 0.6, ["Petit2015"]),
    ("SP-A3", "Resonant ultrasound and EMI injection", 0.4, 0.8, ["Son15", "Trippel17"]),
    ("SP-A4", "Physical adversarial patches", 0.6, 0.6, ["Thys19", "Eykholt18"]),
    ("SP-A5", "Sensor-based privacy leakage", 0.7, 0.4, ["Giaretta2018", "CampazasVega23"]),
    ("DP-A1", "Timing channel interference", 0.5, 0.8, ["Li2024", "Proctor2001"]),
    ("DP-A2", "Memory safety exploits", 0.6, 0.8, ["CVE20185268", "AliasUR2020"]),
    ("DP-A3", "Race conditions and TOCTOU flaws", 0.4, 0.6, ["ROS2Race2020"]),
    ("DP-A4", "Estimator bias tampering", 0.4, 0.8, ["Cao2023"]),
    ("MW-A1", "Topic spoofing and participant impersonation", 0.7, 0.8, ["Mayoral2020", "diluoffo2019credential"]),
    ("MW-A2", "Replay and stale frame injection", 0.6, 0.6, ["lauser2025ddssecurity"]),
    ("MW-A3", "Plaintext sniffing and data exfiltration", 0.8, 0.4, ["Giaretta2018"]),
    ("MW-A4", "Discovery abuse and denial-of-service (DoS)", 0.6, 0.6, ["CibrarioBertolotti2025"]),
    ("DM-A1", "Adversarial Examples in Perception and Policy", 0.5, 0.8, ["Chen2024AoR", "Buddareddygari2022RLSign"]),
    ("DM-A2", "Sequential perturbation of control policies", 0.3, 0.8, ["Shi2024ANYmal"]),
    ("DM-A3", "Concept drift and sensor fusion spoofing", 0.4, 0.6, ["Shen2020"]),
    ("DM-A4", "Reward hacking and specification gaming", 0.5, 0.6, ["Krakovna2020SpecGaming"]),
    ("DM-A5", "Model poisoning and physical backdoors", 0.3, 0.8, ["wang2024trojanrobot"]),
    ("DM-A6", "Finite State Machine (FSM) corruption and logic bombs", 0.3, 0.8, ["Govil2017LLB"]),
    ("DM-A7", "Control parameter tampering", 0.5, 1.0, ["TrendMicro2017RogueRobots"]),
    ("DM-A8", "Planning logic manipulation", 0.3, 0.8, ["Vemprala2021PlannerAttack"]),
    ("DM-A9", "Malicious OTA updates", 0.4, 1.0, ["NHTSA2022BestPractices"]),
    ("DM-A10", "Federated learning poisoning", 0.2, 0.6, ["Bagdasaryan2020BackdoorFL"]),
    ("DM-A11", "Trojaned pretrained models and supply chain threats", 0.4, 0.8, ["wang2024trojanrobot"]),
    ("AP-A1", "Script and state-machine corruption", 0.5, 0.8, ["Quarta17", "Pogliani2019ConnectedFactory"]),
    ("AP-A2", "Unauthenticated APIs and remote override", 0.7, 1.0, ["DeMarinis2019ROSScan", "Giaretta2018"]),
    ("AP-A3", "CI/CD supply chain compromise", 0.3, 0.8, ["firmwarecicd"]),
    ("AP-A4", "Sim-to-real discrepancy and digital-twin overload", 0.4, 0.4, ["Xu2021", "Tan-sim", "Tandigital"]),
    ("AP-A5", "Runtime parameter tampering", 0.5, 0.8, ["Quarta17"]),
    ("SI-A1", "Inaudible and line-of-sight command injection", 0.5, 0.6, ["Zhang2017DolphinAttack", "Sugawara2020LightCommands"]),
    ("SI-A2", "Synthetic or hidden audio", 0.5, 0.6, ["Yuan2018CommanderSong", "Liu2024PhantomOpera"]),
    ("SI-A3", "Visual spoofing and adversarial cues", 0.4, 0.6, ["Thys19", "Wu2023DepthFake"]),
    ("SI-A4", "Covert A/V eaves-dropping via social channels", 0.6, 0.4, ["Giaretta2018", "denning2009spotlight", "oruma"]),
    ("SI-A5", "Trust manipulation and social engineering", 0.7, 0.6, ["Belpaeme2019RobotPersuasion", "Aroyo2018TrustSE"]),
]

DEFENSES = [
    ("P-D1", "Secure boot", ["NVIDIA_L4T_SecureBoot", "NVIDIA_Jetson_SecureBoot_r35_4_1", "FPGAsecureBoot20"]),
    ("P-D2", "Redundant encoders", ["CampeauLecours17"]),
    ("P-D3", "Rail-level cutouts", ["Ismail2024"]),
    ("P-D4", "Tamper evidence", ["Vidakovic23", "PaleyHB16"]),
    ("P-D5", "Leak-resilient mechanics", ["Matlack15"]),
    ("SP-D1", "Cross-modal verification and temporal coherence", ["You2021", "Hau2021"]),
    ("SP-D2", "Coded illumination and pulse signatures", ["wang2015", "Yu2019"]),
    ("SP-D3", "Acoustic and EMI hardening", ["Jeong2017", "Kune13"]),
    ("SP-D4", "Robust perception via adversarial training", ["Liu2023"]),
    ("SP-D5", "On-device encryption and data hygiene", ["Kim2020", "Mi2024"]),
    ("DP-D1", "Timing guards", ["Ye2023", "Abaza2024"]),
    ("DP-D2", "Memory safety", ["HULKs2023", "Deng2022"]),
    ("DP-D3", "Race-proof queues", ["Wagner2024", "hardlog_ahmad", "Paccagnella2020"]),
    ("DP-D4", "Parameter attestation and sanity filters", ["kuang2020", "tanil2018", "Bloesch-RSS-12"]),
    ("MW-D1", "Cryptographic hardening (DDS-Security / SROS2)", ["Deng2022"]),
    ("MW-D2", "Intrusion detection and policy enforcement", ["Rivera2019", "SorianoSalvador2024"]),
    ("MW-D3", "Information-flow control", ["Picaros2024"]),
    ("MW-D4", "QoS shaping and freshness enforcement", ["Wagner2024", "Abaza2024"]),
    ("DM-D1", "Redundant and certified decision-making", ["Lutjens2020CertifiedRL", "Gandhi2025RoboRebound"]),
    ("DM-D2", "Adversary-aware planning", ["Shi2023RMOP", "SorianoSalvador2024"]),
    ("DM-D3", "Simulated adversary modules (shadow probe)", ["Shi2024ANYmal", "pinto2017"]),
    ("DM-D4", "Adversarial training and risk-aware policies", ["Xie2025DualAgent", "Lutjens2020CertifiedRL", "Han2024Agility"]),
    ("DM-D5", "Poisoning-resilient learning", ["Liu2022RobustIL"]),
    ("DM-D6", "Backdoor detection", ["Fan2025PeerGuard"]),
    ("DM-D7", "Secure model updates and storage", ["Plappert2023SecureOTA"]),
    ("AP-D1", "Signed scripts and runtime monitors", ["Colledanchise2021"]),
    ("AP-D2", "API gateways and intrusion detection", ["Rivera2019", "SorianoSalvador2024"]),
    ("AP-D3", "Secure OTA and reproducible CI", ["Plappert2023SecureOTA"]),
    ("AP-D4", "Twin hardening and domain randomization", ["Xu2021", "Muratore2022", "Betzer2024"]),
    ("AP-D5", "Parameter whitelists and dynamic guards", ["Quarta17"]),
    ("SI-D1", "Hardware filtering and signal checks", ["Zhang2021EarArray", "Liu2024MicGuard"]),
    ("SI-D2", "Robust ASR and speaker authentication", ["CommandShield2022"]),
    ("SI-D3", "Anti-spoof vision", ["Liu2019AuroraGuard", "Wu2023DepthFake"]),
    ("SI-D4", "Sensor access control and privacy by design", ["SorianoSalvador2024", "martin2025towards"]),
    ("SI-D5", "Script integrity and trust boundary training", ["Saunderson2021Persuasion", "Colledanchise2021"]),
]

# attack id -> {defense id: gamma}; unlisted cells are 0.0
COVERAGE = {
    "P-A1": {"P-D1": 1.0, "P-D4": 0.25, "AP-D3": 0.25},
    "P-A2": {"P-D2": 0.75, "SP-D1": 0.25, "DP-D4": 0.25},
    "P-A3": {"P-D3": 0.75, "P-D4": 0.25},
    "P-A4": {"P-D4": 0.5, "P-D2": 0.25},
    "P-A5": {"P-D5": 0.75, "SP-D3": 0.25},
    "SP-A1": {"SP-D1": 0.75, "SP-D2": 0.75, "SI-D3": 0.25},
    "SP-A2": {"SP-D1": 0.5, "SP-D2": 0.5},
    "SP-A3": {"SP-D3": 0.75, "SP-D1": 0.25, "SI-D1": 0.25},
    "SP-A4": {"SP-D4": 0.5, "SP-D1": 0.25, "DM-D4": 0.25},
    "SP-A5": {"SP-D5": 0.75, "SI-D4": 0.5, "MW-D3": 0.25},
    "DP-A1": {"DP-D1": 0.75, "MW-D4": 0.25},
    "DP-A2": {"DP-D2": 1.0, "MW-D2": 0.25},
    "DP-A3": {"DP-D3": 0.75, "DP-D2": 0.25},
    "DP-A4": {"DP-D4": 0.5, "SP-D1": 0.25, "P-D2": 0.25},
    "MW-A1": {"MW-D1": 1.0, "MW-D2": 0.5},
    "MW-A2": {"MW-D4": 0.75, "MW-D1": 0.5},
    "MW-A3": {"MW-D1": 0.75, "MW-D3": 0.5, "SP-D5": 0.25},
    "MW-A4": {"MW-D2": 0.5, "MW-D4": 0.5},
    "DM-A1": {"DM-D4": 0.5, "SP-D4": 0.5, "DM-D1": 0.25},
    "DM-A2": {"DM-D4": 0.5, "DM-D2": 0.5, "DM-D3": 0.25},
    "DM-A3": {"DM-D1": 0.5, "SP-D1": 0.5},
    "DM-A4": {"DM-D3": 0.5, "DM-D4": 0.25, "DM-D1": 0.25},
    "DM-A5": {"DM-D6": 0.75, "DM-D5": 0.5},
    "DM-A6": {"DM-D1": 0.5, "AP-D1": 0.5},
    "DM-A7": {"DP-D4": 0.75, "AP-D5": 0.5},
    "DM-A8": {"DM-D2": 0.5, "DM-D3": 0.5, "DM-D1": 0.25},
    "DM-A9": {"DM-D7": 0.75, "AP-D3": 0.75, "P-D1": 0.25},
    "DM-A10": {"DM-D5": 0.75},
    "DM-A11": {"DM-D6": 0.5, "DM-D7": 0.5},
    "AP-A1": {"AP-D1": 1.0, "SI-D5": 0.25},
    "AP-A2": {"AP-D2": 0.75, "MW-D1": 0.5, "MW-D2": 0.25},
    "AP-A3": {"AP-D3": 0.75},
    "AP-A4": {"AP-D4": 0.5},
    "AP-A5": {"AP-D5": 0.75, "DP-D4": 0.5},
    "SI-A1": {"SI-D1": 0.75, "SI-D2": 0.25},
    "SI-A2": {"SI-D2": 0.75},
    "SI-A3": {"SI-D3": 0.75, "SP-D1": 0.25},
    "SI-A4": {"SI-D4": 0.75, "SP-D5": 0.25},
    "SI-A5": {"SI-D5": 0.5},
}


def layer_of(identifier):
    return identifier.split("-")[0]


def main():
    defense_ids = [d[0] for d in DEFENSES]
    gamma = []
    for attack in ATTACKS:
        row = [0.0] * len(DEFENSES)
        for defense, value in COVERAGE[attack[0]].items():
            row[defense_ids.index(defense)] = value
        gamma.append(row)
    catalog = {
        "version": "1.0.0-illustrative",
        "illustrative": True,
        "layers": LAYERS,
        "attacks": [
            {"id": a, "layer": layer_of(a), "name": n, "likelihood": lam, "impact": imp,
             "detectability": 1.0, "references": refs}
            for a, n, lam, imp, refs in ATTACKS
        ],
        "defenses": [
            {"id": d, "layer": layer_of(d), "name": n, "references": refs}
            for d, n, refs in DEFENSES
        ],
        "gamma": gamma,
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "catalog" / "default_catalog.json"
    out.write_text(json.dumps(catalog, indent=2) + "\n")
    print(f"wrote {out}: {len(ATTACKS)} attacks x {len(DEFENSES)} defenses")


if __name__ == "__main__":
    main()
