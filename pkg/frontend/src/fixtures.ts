// Sample documents the fixture picker offers when no file is at hand.
// The invoicing pipeline is the same document the command-line tools ship;
// the broken one stops before an end pattern and trips validation on purpose.

import type { GraphDoc } from "./types.js";

export const invoicingFixture: GraphDoc = {
  "tenant": "erp",
  "nodes": [
    {
      "id": "s",
      "name": "start:invoice intake",
      "type": "start",
      "char": {
        "mc": [
          0,
          1
        ],
        "acc": "rw",
        "mg": true,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [],
      "out_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "mode"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "e1",
      "name": "content-enricher:Prepare to store",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": "lookup sender identity",
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "mode"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "e2",
      "name": "content-enricher:setHeader",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": "set interchange identity header",
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "sg",
      "name": "signer:PKCS7 sign",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": "sign payload",
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "m1",
      "name": "message-translator:interchange mapping",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": "map client fiscal code",
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code_client",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "st1",
      "name": "store:cache signed invoice",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "st2",
      "name": "store:persist invoice",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "r",
      "name": "content-based-router:mode",
      "type": "condition",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "ro",
        "mg": false,
        "cnd": [
          "mode=='test'",
          "mode=='prod'",
          "otherwise"
        ],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        },
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        },
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "c1",
      "name": "request-reply:submit test",
      "type": "external-call",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": "sdi://test"
    },
    {
      "id": "c2",
      "name": "request-reply:submit prod",
      "type": "external-call",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": "sdi://prod"
    },
    {
      "id": "de",
      "name": "end:discard",
      "type": "end",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "ro",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [],
      "remote_link": null
    },
    {
      "id": "j",
      "name": "structural-join:await receipt",
      "type": "structural-join",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "ro",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        },
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "e3",
      "name": "content-enricher:map response",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": "extract response document",
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "response_document",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "e4",
      "name": "content-enricher:setHeader response",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": "stamp reception time",
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "response_document",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "data_time_reception",
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "response_document",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "st3",
      "name": "store:persist response",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "data_time_reception",
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "response_document",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "data_time_reception",
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "response_document",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "m2",
      "name": "message-translator:ERP response mapping",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": "map response to ERP schema",
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "data_time_reception",
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "fiscal_code",
              "invoice",
              "receipt",
              "response_document",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "data_time_reception",
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "erp_response",
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "en",
      "name": "end:done",
      "type": "end",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "ro",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "yes",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "hdr": [
              "data_time_reception",
              "id_sender",
              "identity_code",
              "mode",
              "sdi_identity"
            ],
            "pl": [
              "erp_response",
              "fiscal_code",
              "invoice",
              "receipt",
              "signed_invoice"
            ]
          }
        }
      ],
      "out_contracts": [],
      "remote_link": null
    }
  ],
  "edges": [
    [
      "s",
      "e1"
    ],
    [
      "e1",
      "e2"
    ],
    [
      "e2",
      "sg"
    ],
    [
      "sg",
      "m1"
    ],
    [
      "m1",
      "st1"
    ],
    [
      "st1",
      "st2"
    ],
    [
      "st2",
      "r"
    ],
    [
      "r",
      "c1"
    ],
    [
      "r",
      "c2"
    ],
    [
      "r",
      "de"
    ],
    [
      "c1",
      "j"
    ],
    [
      "c2",
      "j"
    ],
    [
      "j",
      "e3"
    ],
    [
      "e3",
      "e4"
    ],
    [
      "e4",
      "st3"
    ],
    [
      "st3",
      "m2"
    ],
    [
      "m2",
      "en"
    ]
  ]
};

export const brokenFixture: GraphDoc = {
  "tenant": "t1",
  "nodes": [
    {
      "id": "s",
      "name": "start:order intake",
      "type": "start",
      "char": {
        "mc": [
          0,
          1
        ],
        "acc": "rw",
        "mg": true,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [],
      "out_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "pl": [
              "order"
            ]
          }
        }
      ],
      "remote_link": null
    },
    {
      "id": "m",
      "name": "filter:drop empties",
      "type": "message-processor",
      "char": {
        "mc": [
          1,
          1
        ],
        "acc": "rw",
        "mg": false,
        "cnd": [],
        "prg": null,
        "cap_mb": 64,
        "sh": true
      },
      "in_contracts": [
        {
          "concepts": {
            "signed": "any",
            "encrypted": "any",
            "encoded": "any"
          },
          "elements": {
            "pl": [
              "order"
            ]
          }
        }
      ],
      "out_contracts": [],
      "remote_link": null
    }
  ],
  "edges": [
    [
      "s",
      "m"
    ]
  ]
};
