"""Built-in industry registries for national input-output tables.

Two classifications ship with the package: the 34-industry scheme used by
the WIOD-style national tables (UK, Germany, Greece, Russia vintage) and
the 38-industry scheme of the Ukrainian national statistics.  No mapping
between the two is attempted; they are different classifications.
"""

from __future__ import annotations

WIOD_34 = (
    "Agriculture, Hunting, Forestry and Fishing",
    "Mining and Quarrying",
    "Food, Beverages and Tobacco",
    "Textiles and Textile Products",
    "Leather, Leather and Footwear",
    "Wood and Products of Wood and Cork",
    "Pulp, Paper, Paper, Printing and Publishing",
    "Coke, Refined Petroleum and Nuclear Fuel",
    "Chemicals and Chemical Products",
    "Rubber and Plastics",
    "Other Nonmetallic Mineral",
    "Basic Metals and Fabricated Metal",
    "Machinery, Nec",
    "Electrical and Optical Equipment",
    "Transport Equipment",
    "Manufacturing, Nec; Recycling",
    "Electricity, Gas and Water Supply",
    "Construction",
    "Sale, Maintenance and Repair of Motor Vehicles and Motorcycles; Retail Sale of Fuel",
    "Wholesale Trade and Commission Trade, Except of Motor Vehicles and Motorcycles",
    "Retail Trade, Except of Motor Vehicles and Motorcycles; Repair of Household Goods",
    "Hotels and Restaurants",
    "Inland Transport",
    "Water Transport",
    "Air Transport",
    "Other Supporting and Auxiliary Transport Activities; Activities of Travel Agencies",
    "Post and Telecommunications",
    "Financial Intermediation",
    "Real Estate Activities",
    "Renting of M&Eq and Other Business Activities",
    "Public Admin and Defence; Compulsory Social Security",
    "Education",
    "Health and Social Work",
    "Other Community, Social and Personal Services",
)

UKRAINE_38 = (
    "Agriculture, hunting and related service activities",
    "Forestry, logging and related service activities",
    "Fishing, fish farming and related service activities",
    "Mining of coal and lignite; extraction of peat; mining of uranium and thorium ores",
    "Extraction of crude petroleum and natural gas",
    "Mining of quarrying, except of energy producing materials",
    "Manufacture of food products, beverages and tobacco",
    "Manufacture of textiles and textile products; manufacture of wearing apparel; dressing and dyeing of fur",
    "Manufacture of wood and wood products; manufacture of pulp, paper and paper products; publishing and printing",
    "Manufacture of coke oven products; processing of nuclear fuel",
    "Manufacture of refined petroleum products",
    "Manufacture of chemicals and chemical products; manufacture of rubber and plastic products",
    "Manufacture of other non-metallic mineral products",
    "Manufacture of basic metals and fabricated metal products",
    "Manufacture of machinery and equipment",
    "Manufacturing n.e.c.",
    "Production and distribution of electricity",
    "Manufacture of gas; distribution of gaseous fuels through mains",
    "Steam and hot water supply",
    "Collection, purification and distribution of water",
    "Construction",
    "Trade; repair of motor vehicles, household appliances and personal demand items",
    "Activity of hotels and restaurants",
    "Activity of transport",
    "Post and telecommunications",
    "Financial activity",
    "Real estate activities",
    "Renting of machinery and equipment without operator and of personal and household goods",
    "Computer and related activities",
    "Research and development",
    "Other business activities",
    "Public administration",
    "Education",
    "Health care and provision of social aid",
    "Sewage and refuse disposal, sanitation and similar activities",
    "Activities of membership organizations n.e.c.",
    "Recreational, cultural and sporting activities",
    "Other services activities",
)

REGISTRIES = {34: WIOD_34, 38: UKRAINE_38}


def registry_for(m: int) -> tuple[str, ...] | None:
    """Return the built-in registry matching the industry count, if any."""
    return REGISTRIES.get(m)
