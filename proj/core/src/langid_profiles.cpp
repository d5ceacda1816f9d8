#include <array>

#include "x1/langid.hpp"

namespace x1::detail {

namespace {

// Short reasoning-style passages, one per Latin-script language.
constexpr std::array<SeedText, 23> kSeeds{{
    {"English",
     "Let me think about this problem step by step. First, we need to find the total "
     "number of apples that she has. She buys three bags and each bag has twelve apples, "
     "so the total is thirty six. Then she gives some of them to her friends and keeps the "
     "rest for the family. The question asks how many are left at the end of the week. In "
     "this culture, people usually greet each other with a handshake and they would rather "
     "be on time for the meeting. Therefore the answer should be the number that remains. "
     "We can check the result because the sum of the parts is equal to the whole."},
    {"German",
     "Lass mich dieses Problem Schritt für Schritt durchdenken. Zuerst müssen wir die "
     "Gesamtzahl der Äpfel finden, die sie hat. Sie kauft drei Tüten und jede Tüte enthält "
     "zwölf Äpfel, also ist die Summe sechsunddreißig. Dann gibt sie einige davon ihren "
     "Freunden und behält den Rest für die Familie. Die Frage ist, wie viele am Ende der "
     "Woche übrig bleiben. In dieser Kultur begrüßen sich die Menschen normalerweise mit "
     "einem Händedruck und sind lieber pünktlich zum Treffen. Daher sollte die Antwort die "
     "Zahl sein, die übrig bleibt. Wir können das Ergebnis prüfen, weil die Summe der Teile "
     "gleich dem Ganzen ist."},
    {"Spanish",
     "Déjame pensar en este problema paso a paso. Primero, necesitamos encontrar el número "
     "total de manzanas que ella tiene. Compra tres bolsas y cada bolsa tiene doce manzanas, "
     "así que el total es treinta y seis. Luego le da algunas a sus amigos y guarda el resto "
     "para la familia. La pregunta es cuántas quedan al final de la semana. En esta cultura, "
     "las personas normalmente se saludan con un apretón de manos y prefieren llegar a tiempo "
     "a la reunión. Por lo tanto, la respuesta debe ser el número que queda. Podemos comprobar "
     "el resultado porque la suma de las partes es igual al todo."},
    {"Finnish",
     "Anna minun miettiä tätä ongelmaa vaihe vaiheelta. Ensin meidän täytyy löytää "
     "omenoiden kokonaismäärä, joka hänellä on. Hän ostaa kolme pussia ja jokaisessa "
     "pussissa on kaksitoista omenaa, joten yhteensä niitä on kolmekymmentäkuusi. Sitten hän "
     "antaa osan niistä ystävilleen ja pitää loput perheelle. Kysymys on, kuinka monta on "
     "jäljellä viikon lopussa. Tässä kulttuurissa ihmiset yleensä tervehtivät toisiaan "
     "kättelemällä ja he saapuvat mieluummin ajoissa kokoukseen. Siksi vastauksen pitäisi "
     "olla jäljelle jäävä luku. Voimme tarkistaa tuloksen, koska osien summa on yhtä suuri "
     "kuin kokonaisuus."},
    {"French",
     "Laissez-moi réfléchir à ce problème étape par étape. D'abord, nous devons trouver le "
     "nombre total de pommes qu'elle possède. Elle achète trois sacs et chaque sac contient "
     "douze pommes, donc le total est de trente-six. Ensuite, elle en donne quelques-unes à "
     "ses amis et garde le reste pour la famille. La question est de savoir combien il en "
     "reste à la fin de la semaine. Dans cette culture, les gens se saluent généralement avec "
     "une poignée de main et préfèrent être à l'heure pour la réunion. Par conséquent, la "
     "réponse devrait être le nombre qui reste. Nous pouvons vérifier le résultat car la "
     "somme des parties est égale au tout."},
    {"Hungarian",
     "Hadd gondoljam végig ezt a feladatot lépésről lépésre. Először meg kell találnunk, "
     "hogy összesen hány almája van. Három zacskót vásárol, és minden zacskóban tizenkét alma "
     "van, tehát az összeg harminchat. Ezután néhányat odaad a barátainak, a többit pedig "
     "megtartja a családnak. A kérdés az, hogy mennyi marad a hét végére. Ebben a kultúrában "
     "az emberek általában kézfogással üdvözlik egymást, és inkább pontosan érkeznek a "
     "találkozóra. Ezért a válasznak a megmaradt számnak kell lennie. Az eredményt "
     "ellenőrizhetjük, mert a részek összege egyenlő az egésszel."},
    {"Indonesian",
     "Biarkan saya memikirkan masalah ini langkah demi langkah. Pertama, kita perlu "
     "menemukan jumlah total apel yang dia miliki. Dia membeli tiga kantong dan setiap "
     "kantong berisi dua belas apel, jadi totalnya adalah tiga puluh enam. Kemudian dia "
     "memberikan beberapa kepada teman-temannya dan menyimpan sisanya untuk keluarga. "
     "Pertanyaannya adalah berapa banyak yang tersisa di akhir minggu. Dalam budaya ini, "
     "orang biasanya saling menyapa dengan berjabat tangan dan mereka lebih suka datang tepat "
     "waktu ke rapat. Karena itu, jawabannya harus berupa angka yang tersisa. Kita bisa "
     "memeriksa hasilnya karena jumlah bagian-bagiannya sama dengan keseluruhan."},
    {"Italian",
     "Fammi pensare a questo problema passo dopo passo. Prima di tutto, dobbiamo trovare il "
     "numero totale di mele che lei ha. Compra tre sacchetti e ogni sacchetto contiene dodici "
     "mele, quindi il totale è trentasei. Poi ne dà alcune ai suoi amici e tiene il resto per "
     "la famiglia. La domanda chiede quante ne rimangono alla fine della settimana. In questa "
     "cultura, le persone di solito si salutano con una stretta di mano e preferiscono essere "
     "puntuali alla riunione. Quindi la risposta dovrebbe essere il numero che rimane. "
     "Possiamo controllare il risultato perché la somma delle parti è uguale al tutto."},
    {"Malay",
     "Biar saya fikirkan masalah ini langkah demi langkah. Pertama, kita perlu mencari "
     "jumlah keseluruhan epal yang dia miliki. Dia membeli tiga beg dan setiap beg "
     "mengandungi dua belas biji epal, jadi jumlahnya ialah tiga puluh enam. Kemudian dia "
     "memberikan sebahagian daripadanya kepada kawan-kawannya dan menyimpan bakinya untuk "
     "keluarga. Soalannya ialah berapa banyak yang tinggal pada hujung minggu. Dalam budaya "
     "ini, orang biasanya bersalaman apabila berjumpa dan mereka lebih suka datang tepat pada "
     "masanya ke mesyuarat. Oleh itu, jawapannya mestilah nombor yang tinggal kerana anda "
     "boleh melihat bahawa hasilnya tidak berubah sahaja."},
    {"Dutch",
     "Laat me stap voor stap over dit probleem nadenken. Eerst moeten we het totale aantal "
     "appels vinden dat zij heeft. Ze koopt drie zakken en elke zak bevat twaalf appels, dus "
     "het totaal is zesendertig. Daarna geeft ze er een paar aan haar vrienden en houdt de "
     "rest voor de familie. De vraag is hoeveel er aan het einde van de week over zijn. In "
     "deze cultuur begroeten mensen elkaar meestal met een handdruk en ze zijn liever op tijd "
     "voor de vergadering. Daarom moet het antwoord het getal zijn dat overblijft. We kunnen "
     "het resultaat controleren omdat de som van de delen gelijk is aan het geheel."},
    {"Polish",
     "Pozwól, że przemyślę ten problem krok po kroku. Najpierw musimy znaleźć całkowitą "
     "liczbę jabłek, które ona ma. Kupuje trzy torby i każda torba zawiera dwanaście jabłek, "
     "więc suma wynosi trzydzieści sześć. Następnie daje kilka z nich swoim przyjaciołom, a "
     "resztę zatrzymuje dla rodziny. Pytanie brzmi, ile zostanie na koniec tygodnia. W tej "
     "kulturze ludzie zwykle witają się uściskiem dłoni i wolą przychodzić na spotkanie "
     "punktualnie. Dlatego odpowiedzią powinna być liczba, która pozostaje. Możemy sprawdzić "
     "wynik, ponieważ suma części jest równa całości."},
    {"Portuguese",
     "Deixe-me pensar sobre este problema passo a passo. Primeiro, precisamos encontrar o "
     "número total de maçãs que ela tem. Ela compra três sacos e cada saco tem doze maçãs, "
     "então o total é trinta e seis. Depois ela dá algumas para os seus amigos e guarda o "
     "resto para a família. A pergunta é quantas sobram no final da semana. Nesta cultura, as "
     "pessoas geralmente se cumprimentam com um aperto de mão e preferem chegar na hora para "
     "a reunião. Portanto, a resposta deve ser o número que resta. Podemos verificar o "
     "resultado porque a soma das partes é igual ao todo."},
    {"Romanian",
     "Lasă-mă să mă gândesc la această problemă pas cu pas. Mai întâi, trebuie să găsim "
     "numărul total de mere pe care le are. Ea cumpără trei pungi și fiecare pungă conține "
     "douăsprezece mere, deci totalul este treizeci și șase. Apoi le dă câteva prietenilor ei "
     "și păstrează restul pentru familie. Întrebarea este câte rămân la sfârșitul "
     "săptămânii. În această cultură, oamenii se salută de obicei cu o strângere de mână și "
     "preferă să ajungă la timp la întâlnire. Prin urmare, răspunsul ar trebui să fie numărul "
     "care rămâne. Putem verifica rezultatul deoarece suma părților este egală cu întregul."},
    {"Swedish",
     "Låt mig tänka på det här problemet steg för steg. Först måste vi hitta det totala "
     "antalet äpplen som hon har. Hon köper tre påsar och varje påse innehåller tolv äpplen, "
     "så summan är trettiosex. Sedan ger hon några av dem till sina vänner och behåller resten "
     "till familjen. Frågan är hur många som finns kvar i slutet av veckan. I den här kulturen "
     "hälsar människor vanligtvis på varandra med ett handslag och de kommer hellre i tid till "
     "mötet. Därför bör svaret vara det tal som återstår. Vi kan kontrollera resultatet "
     "eftersom summan av delarna är lika med helheten."},
    {"Swahili",
     "Acha nifikirie tatizo hili hatua kwa hatua. Kwanza, tunahitaji kupata jumla ya idadi "
     "ya machungwa aliyonayo. Ananunua mifuko mitatu na kila mfuko una machungwa kumi na "
     "mbili, kwa hiyo jumla ni thelathini na sita. Kisha anawapa marafiki zake baadhi yao na "
     "kuweka yaliyobaki kwa ajili ya familia. Swali ni ni mangapi yanabaki mwishoni mwa wiki. "
     "Katika utamaduni huu, watu kwa kawaida husalimiana kwa kupeana mikono na wanapendelea "
     "kufika kwa wakati kwenye mkutano. Kwa hiyo jibu linapaswa kuwa idadi inayobaki. Tunaweza "
     "kuhakikisha jibu kwa sababu jumla ya sehemu ni sawa na kitu kizima."},
    {"Tagalog",
     "Hayaan mong pag-isipan ko ang problemang ito nang hakbang-hakbang. Una, kailangan "
     "nating hanapin ang kabuuang bilang ng mga mansanas na mayroon siya. Bumili siya ng "
     "tatlong supot at ang bawat supot ay may labindalawang mansanas, kaya ang kabuuan ay "
     "tatlumpu't anim. Pagkatapos ay ibinigay niya ang ilan sa kanyang mga kaibigan at "
     "itinago ang natitira para sa pamilya. Ang tanong ay kung ilan ang natitira sa katapusan "
     "ng linggo. Sa kulturang ito, karaniwang nakikipagkamay ang mga tao at mas gusto nilang "
     "dumating sa tamang oras sa pulong. Kaya ang sagot ay dapat ang bilang na natitira. "
     "Maaari nating suriin ang resulta dahil ang kabuuan ng mga bahagi ay katumbas ng buo."},
    {"Turkish",
     "Bu problemi adım adım düşünmeme izin verin. Önce, onun sahip olduğu toplam elma "
     "sayısını bulmamız gerekiyor. Üç torba alıyor ve her torbada on iki elma var, yani "
     "toplam otuz altı. Sonra bunların bazılarını arkadaşlarına veriyor ve geri kalanını "
     "ailesi için saklıyor. Soru, haftanın sonunda kaç tane kaldığıdır. Bu kültürde insanlar "
     "genellikle birbirlerini el sıkışarak selamlar ve toplantıya zamanında gelmeyi tercih "
     "ederler. Bu nedenle cevap, geriye kalan sayı olmalıdır. Sonucu kontrol edebiliriz çünkü "
     "parçaların toplamı bütüne eşittir."},
    {"Vietnamese",
     "Hãy để tôi suy nghĩ về bài toán này từng bước một. Đầu tiên, chúng ta cần tìm tổng số "
     "quả táo mà cô ấy có. Cô ấy mua ba túi và mỗi túi có mười hai quả táo, vì vậy tổng cộng "
     "là ba mươi sáu. Sau đó cô ấy cho bạn bè một ít và giữ phần còn lại cho gia đình. Câu "
     "hỏi là còn lại bao nhiêu vào cuối tuần. Trong nền văn hóa này, mọi người thường chào "
     "nhau bằng cái bắt tay và họ thích đến cuộc họp đúng giờ. Vì vậy câu trả lời phải là số "
     "còn lại. Chúng ta có thể kiểm tra kết quả vì tổng các phần bằng toàn bộ."},
    {"Danish",
     "Lad mig tænke over dette problem trin for trin. Først skal vi finde det samlede antal "
     "æbler, som hun har. Hun køber tre poser, og hver pose indeholder tolv æbler, så summen "
     "er seksogtredive. Derefter giver hun nogle af dem til sine venner og beholder resten "
     "til familien. Spørgsmålet er, hvor mange der er tilbage i slutningen af ugen. I denne "
     "kultur hilser folk normalt på hinanden med et håndtryk, og de kommer hellere til tiden "
     "til mødet. Derfor bør svaret være det tal, der er tilbage. Vi kan kontrollere "
     "resultatet, fordi summen af delene er lig med helheden. Hvad mener du nu om det?"},
    {"Irish",
     "Lig dom smaoineamh ar an bhfadhb seo céim ar chéim. Ar dtús, ní mór dúinn líon iomlán "
     "na n-úll atá aici a aimsiú. Ceannaíonn sí trí mhála agus tá dhá úll déag i ngach mála, "
     "mar sin is é tríocha sé an t-iomlán. Ansin tugann sí cuid acu dá cairde agus coinníonn "
     "sí an chuid eile don teaghlach. Is í an cheist ná cé mhéad atá fágtha ag deireadh na "
     "seachtaine. Sa chultúr seo, is gnách le daoine beannú dá chéile le croitheadh láimhe "
     "agus is fearr leo a bheith in am don chruinniú. Dá bhrí sin ba chóir gurb é an freagra "
     "an uimhir atá fágtha."},
    {"Scottish Gaelic",
     "Leig dhomh smaoineachadh air an duilgheadas seo ceum air cheum. An toiseach, feumaidh "
     "sinn an àireamh iomlan de dh'ùbhlan a th' aice a lorg. Tha i a' ceannach trì pocannan "
     "agus tha dà ubhal deug anns gach poca, mar sin 's e trithead 's a sia an àireamh "
     "iomlan. An uairsin bheir i cuid dhiubh dha a caraidean agus cumaidh i an còrr airson an "
     "teaghlaich. 'S e a' cheist cia mheud a tha air fhàgail aig deireadh na seachdain. Anns "
     "a' chultar seo, mar as trice bidh daoine a' cur fàilte air a chèile le crathadh làimhe "
     "agus is fheàrr leotha a bhith ann an àm airson na coinneimh. Mar sin bu chòir gur e am "
     "freagairt an àireamh a tha air fhàgail."},
    {"Maori",
     "Tukua ahau kia whakaaro mō tēnei raruraru i ia hikoinga. Tuatahi, me kimi tātou i te "
     "tapeke o ngā āporo kei a ia. Ka hoko ia i ngā pēke e toru, ā, kei ia pēke ngā āporo "
     "tekau mā rua, nō reira ko te tapeke he toru tekau mā ono. Kātahi ka hoatu e ia ētahi ki "
     "ōna hoa, ā, ka puritia e ia te toenga mō te whānau. Ko te pātai, e hia ngā mea e toe ana "
     "i te mutunga o te wiki. I roto i tēnei ahurea, ka mihi ngā tāngata ki a rātou anō mā te "
     "hongi, ā, he pai ake ki a rātou te tae wawe ki te hui. Nō reira ko te whakautu ko te tau "
     "e toe ana."},
    {"Norwegian",
     "La meg tenke gjennom dette problemet trinn for trinn. Først må vi finne det totale "
     "antallet epler som hun har. Hun kjøper tre poser, og hver pose inneholder tolv epler, "
     "så summen er trettiseks. Deretter gir hun noen av dem til vennene sine og beholder "
     "resten til familien. Spørsmålet er hvor mange som er igjen på slutten av uken. I denne "
     "kulturen hilser folk vanligvis på hverandre med et håndtrykk, og de kommer helst i tide "
     "til møtet. Derfor bør svaret være tallet som er igjen. Vi kan kontrollere resultatet "
     "fordi summen av delene er lik helheten. Hva mener du nå om det?"},
}};

} // namespace

std::span<const SeedText> latin_seed_corpora() { return kSeeds; }

} // namespace x1::detail
