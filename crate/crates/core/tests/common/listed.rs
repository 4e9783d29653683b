//! Seed table averages: (entry id, listed average, bold in the table).

pub const LISTED: [(&str, &str, bool); 74] = [
    ("nguyen2023climatelearnbenchmarkingmachinelearning:sequence-prediction-forecasting", "5.00", true),
    ("nguyen2023climatelearnbenchmarkingmachinelearning:regression", "5.00", true),
    ("nguyen2023climatelearnbenchmarkingmachinelearning:regression-2", "5.00", true),
    ("10-1007-978-3-031-23220-6-4:classification", "5.00", true),
    ("10-1007-978-3-031-23220-6-4:sequence-prediction-forecasting", "5.00", true),
    ("10-1007-978-3-031-23220-6-4:classification-2", "5.00", true),
    ("10-1007-978-3-031-23220-6-4:classification-3", "5.00", true),
    ("allenai-arc:reasoning-generalization", "4.83", true),
    ("fang2024domainagnosticmoleculargenerationchemical:generative", "4.83", true),
    ("hu2021opengraphbenchmarkdatasets:sequence-prediction-forecasting", "4.83", true),
    ("zhang2024empowering:reasoning-generalization", "4.67", true),
    ("tian2024scicoderesearchcodingbenchmark:generative", "4.50", true),
    ("krause2024calochallenge2022communitychallenge:generative", "4.50", true),
    ("takamoto2024pdebenchextensivebenchmarkscientific:regression", "4.50", true),
    ("neurips2024-0db7f135:regression", "4.50", true),
    ("neurips2024-0db7f135:classification", "4.50", true),
    ("neurips2024-0db7f135:classification-2", "4.50", true),
    ("neurips2024-0db7f135:anomaly-detection", "4.50", true),
    ("pramanick2025spiqadatasetmultimodalquestion:multimodal-reasoning", "4.42", false),
    ("karargyris2023federated:classification", "4.33", false),
    ("karargyris2023federated:classification-2", "4.33", false),
    ("karargyris2023federated:classification-3", "4.33", false),
    ("nguyen2024seafloor:classification", "4.33", false),
    ("nguyen2024seafloor:reasoning-generalization", "4.33", false),
    ("neurips2024-a8063075:classification", "4.33", false),
    ("neurips2024-a8063075:classification-2", "4.33", false),
    ("neurips2024-a8063075:classification-3", "4.33", false),
    ("neurips2024-a8063075:regression", "4.33", false),
    ("chanussot2021oc20-tran2023oc22-doi-10-1021-acscatal-0c04525-tran2023b:regression", "4.17", false),
    ("duarte2022fastml:classification", "4.17", false),
    ("duarte2022fastmlsciencebenchmarksaccelerating2:generative", "4.17", false),
    ("farrell2021mlperfhpcholisticbenchmark:regression", "4.17", false),
    ("farrell2021mlperfhpcholisticbenchmark:classification", "4.17", false),
    ("farrell2021mlperfhpcholisticbenchmark:regression-2", "4.17", false),
    ("farrell2021mlperfhpcholisticbenchmark:sequence-prediction-forecasting", "4.17", false),
    ("campolongo2025buildingmachinelearningchallenges:anomaly-detection", "4.17", false),
    ("neurips2024-c4e3b55e:regression", "4.17", false),
    ("neurips2024-c4e3b55e:generative", "4.17", false),
    ("luo2025benchmarkingaiscientistsomics:reasoning-generalization", "4.00", false),
    ("luo2025benchmarkingaiscientistsomics:classification", "4.00", false),
    ("neurips2024-4f9a5acd:sequence-prediction-forecasting", "4.00", false),
    ("hendrycks2021measuring:reasoning-generalization", "3.83", false),
    ("roberts2023satin:multimodal-reasoning", "3.83", false),
    ("rein2023gpqagraduatelevelgoogleproofqa:reasoning-generalization", "3.83", false),
    ("lightman2023lets:reasoning-generalization", "3.83", false),
    ("mudur2025feabenchevaluatinglanguagemodels:reasoning-generalization", "3.83", false),
    ("weitz2025neuralarchitecturecodesignfast:classification", "3.83", false),
    ("khrabrov2024nabla2dftuniversalquantumchemistry:regression", "3.83", false),
    ("campolongo2025buildingmachinelearningchallenges3:anomaly-detection", "3.83", false),
    ("neurips2024-c00d37d6:regression", "3.83", false),
    ("neurips2024-c6c31413:generative", "3.75", false),
    ("neurips2024-c6c31413:regression", "3.75", false),
    ("neurips2024-c6c31413:regression-2", "3.75", false),
    ("zhong2024spiqa:multimodal-reasoning", "3.67", false),
    ("rein2023gpqagraduatelevelgoogleproofqa2:reasoning-generalization", "3.67", false),
    ("jin2020diseasedoespatienthave:reasoning-generalization", "3.50", false),
    ("diguglielmo2025endtoendworkflowmachinelearningbased:classification", "3.50", false),
    ("luo2024cfdbenchlargescalebenchmarkmachine:regression", "3.33", false),
    ("cui2025curieevaluatingllmsmultitask:reasoning-generalization", "3.33", false),
    ("parpillon2024smartpixelsinpixelai:classification", "3.33", false),
    ("https-doi-org-10-5281-zenodo-5046389:anomaly-detection", "3.33", false),
    ("bowles2024betterclassicalsubtleart:classification", "3.17", false),
    ("odagiu2024ultrafastjetclassificationfpgas:classification", "3.17", false),
    ("liu2021braggnnfastxraybragg:classification", "3.17", false),
    ("qin2023extremely:classification", "3.17", false),
    ("duarte2022fastmlsciencebenchmarksaccelerating3-kafkes2021boostrdatasetacceleratorcontrol:reinforcement-learning-control", "3.00", false),
    ("kvapil2025intelligentexperimentsrealtimeai:classification", "3.00", false),
    ("campolongo2025buildingmachinelearningchallenges2:anomaly-detection", "3.00", false),
    ("abud2021deep:anomaly-detection", "2.83", false),
    ("glazer2024frontiermathbenchmarkevaluatingadvanced:reasoning-generalization", "2.50", false),
    ("www-aime:reasoning-generalization", "2.33", false),
    ("quench2024:anomaly-detection", "2.17", false),
    ("jain2013materials:regression", "1.92", false),
    ("wei2024lowlatencyopticalbasedmode:classification", "1.50", false),
];
